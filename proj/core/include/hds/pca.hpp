#pragma once

#include <cstddef>
#include <vector>

#include "hds/matrix.hpp"

namespace hds {

/// Eigen-decomposition of a symmetric matrix.
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;   // sorted non-increasing
  std::vector<double> vectors;  // n x n row-major, row i = eigenvector of values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi on a symmetric n x n row-major matrix. Stops when the
/// off-diagonal Frobenius norm drops below `tolerance` times the matrix norm.
SymmetricEigen jacobi_eigen(std::vector<double> matrix, std::size_t n, int max_sweeps = 100,
                            double tolerance = 1e-12);

struct PcaResult {
  std::size_t dims = 0;
  std::vector<double> mean;
  /// D x D row-major, rows are orthonormal principal axes.
  std::vector<double> components;
  /// Variance along each axis, non-increasing, clamped at 0.
  std::vector<double> variances;
  /// sqrt(variance + epsilon) per axis.
  std::vector<double> semi_axes;
};

/// Principal axes of a point cloud from its sample covariance (divisor n - 1,
/// zero covariance for a single point).
PcaResult pca_fit(const SampleMatrix& points, double epsilon = 1e-12);

/// Sample covariance (D x D row-major) of the rows; also returns the mean.
std::vector<double> sample_covariance(const SampleMatrix& points, std::vector<double>& mean);

}  // namespace hds
