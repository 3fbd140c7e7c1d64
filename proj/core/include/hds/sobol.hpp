#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hds/matrix.hpp"

namespace hds {

/// Unscrambled Sobol sequence with Joe-Kuo direction numbers, generated in
/// Gray-code order (point 0 is the origin).
class SobolEngine {
 public:
  static constexpr int kBits = 32;
  /// Exclusive upper limit on the sequence index.
  static constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 31;

  explicit SobolEngine(std::size_t dims);

  /// Largest dimension supported by the embedded direction table.
  static std::size_t max_dims();

  std::size_t dims() const { return dims_; }
  std::uint64_t index() const { return index_; }

  /// Writes the next point into `out` and advances the index.
  void next(std::span<double> out);
  /// Draws the next `count` points as a unit-cube matrix.
  SampleMatrix draw(std::size_t count);
  /// Advances the index by `count` without emitting points.
  void skip(std::uint64_t count);

 private:
  void check_capacity(std::uint64_t count) const;

  std::size_t dims_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> directions_;  // dims_ x kBits
  std::vector<std::uint32_t> state_;
};

/// Next `count` points of the engine's sequence.
SampleMatrix sobol_points(SobolEngine& engine, std::size_t count);

/// min(2^ceil(log2(200 * dims)), 2^cap_exponent).
std::size_t initial_sample_count(std::size_t dims, int cap_exponent = 15);

}  // namespace hds
