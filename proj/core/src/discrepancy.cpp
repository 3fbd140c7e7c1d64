#include "hds/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "hds/error.hpp"

namespace hds {
namespace {

void check(const SampleMatrix& samples, const char* name) {
  if (samples.empty() || samples.cols() == 0) {
    throw DomainError(std::string(name) + ": empty sample set");
  }
  for (double v : samples.values()) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(name) + ": entries must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(DiscrepancyMetric metric) {
  return metric == DiscrepancyMetric::L2Star ? "l2star" : "centered_l2";
}

std::optional<DiscrepancyMetric> parse_metric(std::string_view name) {
  if (name == "l2star" || name == "l2-star" || name == "L2Star") return DiscrepancyMetric::L2Star;
  if (name == "centered_l2" || name == "centered" || name == "cl2" || name == "CenteredL2") {
    return DiscrepancyMetric::CenteredL2;
  }
  return std::nullopt;
}

double l2_star(const SampleMatrix& samples) {
  check(samples, "l2_star");
  const std::size_t n = samples.rows();
  const std::size_t dims = samples.cols();
  using real = long double;

  real single = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    real prod = 1.0L;
    for (double x : samples.row(i)) prod *= (1.0L - static_cast<real>(x) * x) / 2.0L;
    single += prod;
  }

  real pairs = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = samples.row(i);
    real diag = 1.0L;
    for (std::size_t d = 0; d < dims; ++d) diag *= 1.0L - a[d];
    pairs += diag;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = samples.row(j);
      real prod = 1.0L;
      for (std::size_t d = 0; d < dims; ++d) prod *= 1.0L - std::max(a[d], b[d]);
      pairs += 2.0L * prod;
    }
  }

  const real nn = static_cast<real>(n);
  const real t2 = std::pow(3.0L, -static_cast<real>(dims)) - 2.0L / nn * single + pairs / (nn * nn);
  return static_cast<double>(std::sqrt(std::max(t2, 0.0L)));
}

double centered_l2(const SampleMatrix& samples) {
  check(samples, "centered_l2");
  const std::size_t n = samples.rows();
  const std::size_t dims = samples.cols();
  using real = long double;

  real single = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    real prod = 1.0L;
    for (double x : samples.row(i)) {
      const real z = std::abs(static_cast<real>(x) - 0.5L);
      prod *= 1.0L + 0.5L * z - 0.5L * z * z;
    }
    single += prod;
  }

  real pairs = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = samples.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto b = samples.row(j);
      real prod = 1.0L;
      for (std::size_t d = 0; d < dims; ++d) {
        const real za = std::abs(static_cast<real>(a[d]) - 0.5L);
        const real zb = std::abs(static_cast<real>(b[d]) - 0.5L);
        prod *= 1.0L + 0.5L * za + 0.5L * zb - 0.5L * std::abs(static_cast<real>(a[d]) - b[d]);
      }
      pairs += (i == j ? 1.0L : 2.0L) * prod;
    }
  }

  const real nn = static_cast<real>(n);
  const real c2 = std::pow(13.0L / 12.0L, static_cast<real>(dims)) - 2.0L / nn * single + pairs / (nn * nn);
  return static_cast<double>(std::sqrt(std::max(c2, 0.0L)));
}

DiscrepancyReport discrepancy(const SampleMatrix& samples, DiscrepancyMetric metric) {
  const double value = metric == DiscrepancyMetric::L2Star ? l2_star(samples) : centered_l2(samples);
  return {metric, value, samples.rows(), samples.cols()};
}

}  // namespace hds
