#pragma once

#include <cstddef>

namespace hds {

/// Regularized lower incomplete gamma P(a, x).
double regularized_lower_gamma(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_upper_gamma(double a, double x);

double chi2_cdf(double x, double dof);

/// Chi-squared quantile by bisection on the CDF.
/// Throws DomainError unless 0 < alpha < 1 and dof >= 1.
double chi2_quantile(double alpha, double dof);

/// Dimension-dependent constant 0.55 - 0.01 ln(D) applied to the chi-squared radius.
double radial_constant(std::size_t dims);

/// Global ellipsoid radius multiplier C_D * sqrt(chi2_quantile(alpha, D)).
double radial_scale_factor(std::size_t dims, double alpha = 0.9999);

double normal_cdf(double x);
/// Inverse standard normal CDF for p in (0, 1).
double normal_quantile(double p);

}  // namespace hds
