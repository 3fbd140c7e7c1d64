#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hds/kmeans.hpp"
#include "hds/matrix.hpp"
#include "hds/rng.hpp"
#include "hds/sobol.hpp"

namespace hds {

/// One sampling ellipsoid in the unit-cube frame.
struct EllipsoidModel {
  std::vector<double> center;
  /// D x D row-major; rows are the orthonormal principal axes.
  std::vector<double> rotation;
  std::vector<double> semi_axes;
  /// Initial points assigned to this cluster.
  std::size_t weight_count = 0;
  /// Output samples assigned to this ellipsoid.
  std::size_t allocation = 0;

  std::size_t dims() const { return center.size(); }
};

/// Fits K clusters to the initial sample and derives one ellipsoid per
/// non-empty cluster from the PCA of its members. Clusters with fewer than
/// two members get the identity rotation and sqrt(epsilon) semi-axes.
std::vector<EllipsoidModel> build_ellipsoids(const SampleMatrix& initial, std::size_t k,
                                             RngStream& rng, double epsilon = 1e-12,
                                             const MiniBatchOptions& options = {});

/// Splits `total` samples proportionally to `counts`, rounding each share and
/// then repairing the sum one sample at a time on the largest count (lowest
/// index on ties).
std::vector<std::size_t> allocate_samples(std::span<const std::size_t> counts, std::size_t total);

/// `count` points inside the scaled ellipsoid: unit directions stretched by
/// q^(1/D) * lambda with q taken from `radial` (a 1-D Sobol engine), then
/// scaled by the semi-axes, rotated onto the principal axes and shifted to the
/// center. Points are not clipped to the unit cube.
SampleMatrix sample_ellipsoid(const EllipsoidModel& model, std::size_t count, double lambda,
                              SobolEngine& radial, RngStream& rng);

}  // namespace hds
