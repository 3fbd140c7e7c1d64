#include "hds/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hds/error.hpp"

namespace hds {
namespace {

constexpr int kMaxSeriesTerms = 100000;
constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxSeriesTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("regularized_lower_gamma: a must be > 0");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_continued_fraction(a, x);
}

double regularized_upper_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("regularized_upper_gamma: a must be > 0");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_continued_fraction(a, x);
}

double chi2_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw DomainError("chi2_cdf: dof must be > 0");
  return regularized_lower_gamma(0.5 * dof, 0.5 * x);
}

double chi2_quantile(double alpha, double dof) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chi2_quantile: alpha must lie in (0, 1)");
  if (!(dof >= 1.0)) throw DomainError("chi2_quantile: dof must be >= 1");

  double lo = 0.0;
  double hi = std::max(1.0, dof);
  while (chi2_cdf(hi, dof) < alpha) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, dof) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double radial_constant(std::size_t dims) {
  if (dims == 0) throw DomainError("radial_constant: dims must be >= 1");
  return 0.55 - 0.01 * std::log(static_cast<double>(dims));
}

double radial_scale_factor(std::size_t dims, double alpha) {
  return radial_constant(dims) * std::sqrt(chi2_quantile(alpha, static_cast<double>(dims)));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation followed by one Halley refinement step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace hds
