#pragma once

#include <cstddef>
#include <vector>

#include "hds/matrix.hpp"

namespace hds {

/// Axis-aligned search box. Construction rejects empty, mismatched, non-finite
/// or zero-width dimensions.
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper);

  /// The same [lo, hi] interval in every dimension.
  static Bounds uniform(std::size_t dims, double lo, double hi);
  static Bounds unit(std::size_t dims) { return uniform(dims, 0.0, 1.0); }

  std::size_t dims() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double range(std::size_t d) const { return upper_[d] - lower_[d]; }

  bool contains(std::span<const double> point) const;

  friend bool operator==(const Bounds&, const Bounds&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// (x - lower) / range per coordinate; result is tagged Frame::UnitCube.
SampleMatrix normalize(const SampleMatrix& points, const Bounds& bounds);

/// x * range + lower per coordinate; result is tagged Frame::Bounds.
SampleMatrix denormalize(const SampleMatrix& points, const Bounds& bounds);

}  // namespace hds
