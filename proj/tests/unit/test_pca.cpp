#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hds/error.hpp"
#include "hds/pca.hpp"
#include "hds/rng.hpp"

namespace {

hds::SampleMatrix correlated_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  hds::RngStream r(seed);
  std::vector<double> mix(d * d);
  for (double& v : mix) v = r.normal();
  hds::SampleMatrix m(n, d);
  std::vector<double> z(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z) v = r.normal();
    for (std::size_t a = 0; a < d; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < d; ++b) s += mix[a * d + b] * z[b];
      m(i, a) = s + static_cast<double>(a);
    }
  }
  return m;
}

Eigen::MatrixXd eigen_covariance(const hds::SampleMatrix& m) {
  Eigen::MatrixXd x(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x(i, j) = m(i, j);
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  return centered.transpose() * centered / static_cast<double>(m.rows() - 1);
}

TEST(Jacobi, MatchesEigenSolver) {
  for (std::size_t d : {2u, 5u, 12u, 40u}) {
    const auto cloud = correlated_cloud(500, d, d);
    const Eigen::MatrixXd cov = eigen_covariance(cloud);
    std::vector<double> a(cov.data(), cov.data() + d * d);
    const auto eig = hds::jacobi_eigen(a, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(cov);
    for (std::size_t i = 0; i < d; ++i) {
      const double expected = ref.eigenvalues()(static_cast<Eigen::Index>(d - 1 - i));
      EXPECT_NEAR(eig.values[i], expected, 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(Pca, InvariantsAndReconstruction) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t d = 3 + 4 * seed;
    const auto cloud = correlated_cloud(400, d, 100 + seed);
    const auto pca = hds::pca_fit(cloud);
    const Eigen::MatrixXd cov = eigen_covariance(cloud);

    Eigen::MatrixXd p(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) = pca.components[i * d + j];
    EXPECT_LT((p * p.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-9);

    Eigen::VectorXd lam(d);
    for (std::size_t i = 0; i < d; ++i) {
      lam(i) = pca.variances[i];
      EXPECT_GE(pca.variances[i], 0.0);
      if (i > 0) EXPECT_LE(pca.variances[i], pca.variances[i - 1]);
      EXPECT_NEAR(pca.semi_axes[i], std::sqrt(pca.variances[i] + 1e-12), 1e-15);
    }
    const Eigen::MatrixXd rebuilt = p.transpose() * lam.asDiagonal() * p;
    EXPECT_LT((rebuilt - cov).norm() / cov.norm(), 1e-8);
  }
}

TEST(Pca, IdenticalPointsHitEpsilonFloor) {
  hds::SampleMatrix m(10, 3);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = 0.3 + j;
  const auto pca = hds::pca_fit(m, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT(pca.variances[i], 1e-25);
    EXPECT_NEAR(pca.semi_axes[i], 1e-6, 1e-12);
  }
  EXPECT_DOUBLE_EQ(pca.mean[1], 1.3);
}

TEST(Pca, DiagonalCloudRecoversAxes) {
  hds::RngStream r(8);
  hds::SampleMatrix m(40000, 2);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, 0) = 2.0 * r.normal();
    m(i, 1) = r.normal();
  }
  const auto pca = hds::pca_fit(m);
  EXPECT_NEAR(pca.variances[0], 4.0, 0.1);
  EXPECT_NEAR(pca.variances[1], 1.0, 0.03);
  EXPECT_NEAR(std::abs(pca.components[0]), 1.0, 1e-2);
  EXPECT_NEAR(std::abs(pca.components[3]), 1.0, 1e-2);
}

TEST(Pca, TwoPointsAreRankOne) {
  hds::SampleMatrix m(2, 5);
  for (std::size_t j = 0; j < 5; ++j) {
    m(0, j) = 0.1 * j;
    m(1, j) = 0.5 - 0.05 * j;
  }
  const auto pca = hds::pca_fit(m);
  EXPECT_GT(pca.variances[0], 1e-3);
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_LT(pca.variances[i], 1e-14);
    EXPECT_NEAR(pca.semi_axes[i], 1e-6, 1e-8);
  }
}

TEST(Pca, SinglePointAndEmpty) {
  hds::SampleMatrix one(1, 4);
  const auto pca = hds::pca_fit(one);
  for (double s : pca.semi_axes) EXPECT_DOUBLE_EQ(s, 1e-6);
  EXPECT_THROW(hds::pca_fit(hds::SampleMatrix(0, 4)), hds::ConfigError);
}

}  // namespace
