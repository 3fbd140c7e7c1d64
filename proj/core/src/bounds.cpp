#include "hds/bounds.hpp"

#include <cmath>
#include <string>

#include "hds/error.hpp"

namespace hds {

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ConfigError("bounds: at least one dimension required");
  if (lower_.size() != upper_.size()) {
    throw ConfigError("bounds: lower has " + std::to_string(lower_.size()) + " entries, upper has " +
                      std::to_string(upper_.size()));
  }
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!std::isfinite(lower_[d]) || !std::isfinite(upper_[d])) {
      throw ConfigError("bounds: non-finite limit in dimension " + std::to_string(d));
    }
    if (!(upper_[d] > lower_[d])) {
      throw ConfigError("bounds: upper must exceed lower in dimension " + std::to_string(d));
    }
  }
}

Bounds Bounds::uniform(std::size_t dims, double lo, double hi) {
  return Bounds(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

bool Bounds::contains(std::span<const double> point) const {
  if (point.size() != dims()) return false;
  for (std::size_t d = 0; d < point.size(); ++d) {
    if (!(point[d] >= lower_[d] && point[d] <= upper_[d])) return false;
  }
  return true;
}

namespace {

void check_dims(const SampleMatrix& points, const Bounds& bounds) {
  if (points.cols() != bounds.dims()) {
    throw ConfigError("sample matrix has " + std::to_string(points.cols()) +
                      " columns but bounds have " + std::to_string(bounds.dims()) + " dimensions");
  }
}

}  // namespace

SampleMatrix normalize(const SampleMatrix& points, const Bounds& bounds) {
  check_dims(points, bounds);
  SampleMatrix out(points.rows(), points.cols(), Frame::UnitCube);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t d = 0; d < points.cols(); ++d) {
      out(i, d) = (points(i, d) - bounds.lower()[d]) / bounds.range(d);
    }
  }
  return out;
}

SampleMatrix denormalize(const SampleMatrix& points, const Bounds& bounds) {
  check_dims(points, bounds);
  SampleMatrix out(points.rows(), points.cols(), Frame::Bounds);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t d = 0; d < points.cols(); ++d) {
      out(i, d) = points(i, d) * bounds.range(d) + bounds.lower()[d];
    }
  }
  return out;
}

}  // namespace hds
