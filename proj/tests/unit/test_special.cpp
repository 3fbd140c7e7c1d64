#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "hds/error.hpp"
#include "hds/special.hpp"

namespace {

TEST(IncompleteGamma, AgreesWithBoost) {
  for (double a : {0.5, 1.0, 2.5, 5.0, 50.0, 500.0}) {
    for (double x : {1e-3, 0.1, 1.0, 3.0, 10.0, 60.0, 400.0, 700.0}) {
      EXPECT_NEAR(hds::regularized_lower_gamma(a, x), boost::math::gamma_p(a, x), 1e-12) << a << " " << x;
      EXPECT_NEAR(hds::regularized_upper_gamma(a, x), boost::math::gamma_q(a, x), 1e-12) << a << " " << x;
    }
  }
}

TEST(Chi2Quantile, MedianOfTwoDof) { EXPECT_NEAR(hds::chi2_quantile(0.5, 2), 2.0 * std::log(2.0), 1e-9); }

TEST(Chi2Quantile, ReferenceValuesAtHighConfidence) {
  // scipy.stats.chi2.ppf(0.9999, k)
  EXPECT_NEAR(hds::chi2_quantile(0.9999, 10), 35.564013941952396, 1e-8);
  EXPECT_NEAR(hds::chi2_quantile(0.9999, 50), 95.96874847816385, 1e-8);
  EXPECT_NEAR(hds::chi2_quantile(0.9999, 100), 161.31865695904807, 1e-7);
  EXPECT_NEAR(hds::chi2_quantile(0.9999, 1000), 1174.9334965841604, 1e-6);
  EXPECT_GT(hds::chi2_quantile(0.9999, 100), hds::chi2_quantile(0.9999, 50));
}

TEST(Chi2Quantile, RoundTripAgainstBoostCdf) {
  for (double k : {1.0, 2.0, 10.0, 100.0, 1000.0}) {
    for (double alpha : {0.01, 0.5, 0.9999}) {
      const double x = hds::chi2_quantile(alpha, k);
      EXPECT_NEAR(boost::math::gamma_p(k / 2.0, x / 2.0), alpha, 1e-10) << k << " " << alpha;
      EXPECT_NEAR(hds::chi2_cdf(x, k), alpha, 1e-10);
    }
  }
}

TEST(Chi2Quantile, MonotoneInAlphaAndDof) {
  double prev = 0.0;
  for (double alpha = 0.05; alpha < 1.0; alpha += 0.05) {
    const double x = hds::chi2_quantile(alpha, 7);
    EXPECT_GT(x, prev);
    prev = x;
  }
  prev = 0.0;
  for (int k = 1; k <= 200; k += 7) {
    const double x = hds::chi2_quantile(0.9, k);
    EXPECT_GT(x, prev);
    prev = x;
  }
}

TEST(Chi2Quantile, DomainErrors) {
  EXPECT_THROW(hds::chi2_quantile(0.0, 3), hds::DomainError);
  EXPECT_THROW(hds::chi2_quantile(1.0, 3), hds::DomainError);
  EXPECT_THROW(hds::chi2_quantile(-0.2, 3), hds::DomainError);
  EXPECT_THROW(hds::chi2_quantile(0.5, 0), hds::DomainError);
}

TEST(RadialScale, ConstantAndFactor) {
  EXPECT_EQ(hds::radial_constant(1), 0.55);
  EXPECT_NEAR(hds::radial_constant(10), 0.55 - 0.01 * std::log(10.0), 1e-15);
  EXPECT_NEAR(hds::radial_constant(10), 0.526974, 1e-6);
  EXPECT_NEAR(hds::radial_scale_factor(10), 3.143, 0.01);
  EXPECT_NEAR(hds::radial_scale_factor(10), 3.142640457231004, 1e-9);
}

TEST(Normal, CdfAndQuantileInvert) {
  for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.9, 0.999999}) {
    EXPECT_NEAR(hds::normal_cdf(hds::normal_quantile(p)), p, 1e-12 + 1e-9 * p);
  }
  EXPECT_NEAR(hds::normal_quantile(0.975), 1.959963984540054, 1e-12);
}

}  // namespace
