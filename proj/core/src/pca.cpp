#include "hds/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hds/error.hpp"

namespace hds {

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, int max_sweeps, double tolerance) {
  if (a.size() != n * n) throw ConfigError("jacobi_eigen: matrix size mismatch");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return s;
  };
  double total = 0.0;
  for (double x : a) total += x * x;
  const double threshold2 = tolerance * tolerance * total;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    const double off = off_norm2();
    if (off <= threshold2 || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        // v holds eigenvectors as rows.
        for (std::size_t k = 0; k < n; ++k) {
          const double vpk = v[p * n + k];
          const double vqk = v[q * n + k];
          v[p * n + k] = c * vpk - s * vqk;
          v[q * n + k] = s * vpk + c * vqk;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

  SymmetricEigen out;
  out.n = n;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t src = order[r];
    out.values[r] = a[src * n + src];
    std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(src * n), n,
                out.vectors.begin() + static_cast<std::ptrdiff_t>(r * n));
  }
  return out;
}

std::vector<double> sample_covariance(const SampleMatrix& points, std::vector<double>& mean) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = points.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> cov(d * d, 0.0);
  if (n < 2) return cov;
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = points.row(i);
    for (std::size_t j = 0; j < d; ++j) centered[j] = row[j] - mean[j];
    for (std::size_t j = 0; j < d; ++j) {
      const double cj = centered[j];
      double* out = cov.data() + j * d;
      for (std::size_t k = j; k < d; ++k) out[k] += cj * centered[k];
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      cov[j * d + k] *= scale;
      cov[k * d + j] = cov[j * d + k];
    }
  }
  return cov;
}

PcaResult pca_fit(const SampleMatrix& points, double epsilon) {
  if (points.rows() < 1) throw ConfigError("pca_fit: need at least one point");
  if (!(epsilon > 0.0)) throw ConfigError("pca_fit: epsilon must be > 0");
  PcaResult out;
  out.dims = points.cols();
  auto cov = sample_covariance(points, out.mean);
  auto eig = jacobi_eigen(std::move(cov), out.dims);
  out.components = std::move(eig.vectors);
  out.variances = std::move(eig.values);
  out.semi_axes.resize(out.dims);
  for (std::size_t i = 0; i < out.dims; ++i) {
    out.variances[i] = std::max(0.0, out.variances[i]);
    out.semi_axes[i] = std::sqrt(out.variances[i] + epsilon);
  }
  return out;
}

}  // namespace hds
