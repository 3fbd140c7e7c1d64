#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "hds/error.hpp"
#include "hds/kmeans.hpp"
#include "hds/linkage.hpp"
#include "hds/rng.hpp"
#include "oracles.hpp"

namespace {

using testing_support::to_rows;

hds::SampleMatrix blobs(const std::vector<std::vector<double>>& centers, std::size_t per_blob, double sd,
                        std::uint64_t seed) {
  hds::RngStream r(seed);
  const std::size_t d = centers.front().size();
  hds::SampleMatrix m(0, d);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < per_blob; ++i) {
    for (const auto& c : centers) {
      for (std::size_t k = 0; k < d; ++k) p[k] = c[k] + sd * r.normal();
      m.append_row(p);
    }
  }
  return m;
}

hds::SampleMatrix uniform_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  hds::RngStream r(seed);
  hds::SampleMatrix m(n, d);
  for (double& v : m.values()) v = r.uniform();
  return m;
}

TEST(MiniBatchKMeans, TwoBlobs) {
  const auto pts = blobs({{0.2, 0.2}, {0.8, 0.8}}, 1500, 0.05, 1);
  hds::RngStream r(2);
  const auto model = hds::minibatch_kmeans(pts, 2, r);
  const auto ref = oracle::lloyd_kmeans(to_rows(pts), 2, 3);
  for (std::size_t c = 0; c < 2; ++c) {
    double best = 1e9;
    for (const auto& rc : ref.centroids) {
      best = std::min(best, std::hypot(model.centroids(c, 0) - rc[0], model.centroids(c, 1) - rc[1]));
    }
    EXPECT_LT(best, 0.05);
    const double target = model.centroids(c, 0) < 0.5 ? 0.2 : 0.8;
    EXPECT_NEAR(model.centroids(c, 0), target, 0.05);
    EXPECT_NEAR(model.centroids(c, 1), target, 0.05);
  }
}

TEST(MiniBatchKMeans, SingleClusterIsTheMean) {
  const auto pts = uniform_cloud(5000, 4, 3);
  hds::RngStream r(4);
  const auto model = hds::minibatch_kmeans(pts, 1, r);
  for (std::size_t d = 0; d < 4; ++d) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.rows(); ++i) s += pts(i, d);
    EXPECT_NEAR(model.centroids(0, d), s / pts.rows(), 1e-6);
  }
  EXPECT_EQ(model.counts[0], 5000u);
}

TEST(MiniBatchKMeans, KEqualsNGivesSingletons) {
  const auto pts = uniform_cloud(30, 3, 5);
  hds::RngStream r(6);
  const auto model = hds::minibatch_kmeans(pts, 30, r);
  for (std::size_t c : model.counts) EXPECT_EQ(c, 1u);
  EXPECT_NEAR(model.inertia, 0.0, 1e-20);
}

TEST(MiniBatchKMeans, ModelInvariants) {
  const auto pts = uniform_cloud(3000, 5, 7);
  hds::RngStream r(8);
  const auto model = hds::minibatch_kmeans(pts, 40, r);
  std::size_t total = 0;
  for (std::size_t c : model.counts) {
    EXPECT_GT(c, 0u);
    total += c;
  }
  EXPECT_EQ(total, pts.rows());
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    ASSERT_LT(model.labels[i], 40u);
    const auto [nearest, dist] = hds::nearest_centroid(pts.row(i), model.centroids);
    double own = 0.0;
    for (std::size_t d = 0; d < 5; ++d) {
      const double diff = pts(i, d) - model.centroids(model.labels[i], d);
      own += diff * diff;
    }
    EXPECT_LE(own, dist + 1e-12);
  }
  for (std::size_t c = 0; c < 40; ++c)
    for (std::size_t d = 0; d < 5; ++d) {
      EXPECT_GE(model.centroids(c, d), 0.0);
      EXPECT_LE(model.centroids(c, d), 1.0);
    }
}

TEST(MiniBatchKMeans, InertiaCloseToFullBatch) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::size_t n = 1024 + 1024 * seed;
    const std::size_t d = 2 + 2 * seed;
    const auto pts = uniform_cloud(n, d, 100 + seed);
    hds::RngStream r(seed);
    const auto model = hds::minibatch_kmeans(pts, 8, r);
    const auto ref = oracle::lloyd_kmeans(to_rows(pts), 8, static_cast<unsigned>(seed));
    EXPECT_LT(model.inertia, 1.10 * ref.inertia) << "n=" << n << " d=" << d;
  }
}

TEST(MiniBatchKMeans, Deterministic) {
  const auto pts = uniform_cloud(4000, 6, 9);
  hds::RngStream a(1);
  hds::RngStream b(1);
  const auto ma = hds::minibatch_kmeans(pts, 20, a);
  const auto mb = hds::minibatch_kmeans(pts, 20, b);
  EXPECT_EQ(ma.centroids, mb.centroids);
  EXPECT_EQ(ma.labels, mb.labels);
}

TEST(MiniBatchKMeans, RejectsTooManyClusters) {
  const auto pts = uniform_cloud(5, 2, 1);
  hds::RngStream r(1);
  EXPECT_THROW(hds::minibatch_kmeans(pts, 6, r), hds::ConfigError);
  EXPECT_THROW(hds::minibatch_kmeans(pts, 0, r), hds::ConfigError);
}

TEST(InitialClusterCount, Rule) {
  EXPECT_EQ(hds::initial_cluster_count(30), 100u);
  EXPECT_EQ(hds::initial_cluster_count(100), 100u);
  EXPECT_EQ(hds::initial_cluster_count(500), 20u);
  EXPECT_EQ(hds::initial_cluster_count(1000), 10u);
  EXPECT_EQ(hds::initial_cluster_count(4000), 10u);
}

TEST(WardLinkage, TwoCentroids) {
  hds::SampleMatrix c(0, 2);
  c.append_row(std::vector<double>{0.0, 0.0});
  c.append_row(std::vector<double>{3.0, 4.0});
  const auto merges = hds::ward_linkage(c);
  ASSERT_EQ(merges.size(), 1u);
  EXPECT_DOUBLE_EQ(merges[0].distance, 5.0);
  EXPECT_EQ(merges[0].size, 2u);
}

TEST(WardLinkage, CollinearEquidistant) {
  hds::SampleMatrix c(0, 1);
  for (double x : {0.0, 1.0, 2.0, 3.0}) c.append_row(std::vector<double>{x});
  const auto merges = hds::ward_linkage(c);
  ASSERT_EQ(merges.size(), 3u);
  EXPECT_DOUBLE_EQ(merges[0].distance, merges[1].distance);
  EXPECT_DOUBLE_EQ(merges[0].distance, 1.0);
}

TEST(WardLinkage, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pts = uniform_cloud(25 + 10 * seed, 3, seed);
    const auto merges = hds::ward_linkage(pts);
    const auto heights = oracle::ward_heights(to_rows(pts));
    ASSERT_EQ(merges.size(), pts.rows() - 1);
    for (std::size_t i = 0; i < merges.size(); ++i) {
      EXPECT_NEAR(merges[i].distance, heights[i], 1e-10 * std::max(1.0, heights[i]));
      if (i > 0) EXPECT_GE(merges[i].distance, merges[i - 1].distance - 1e-12);
    }
    EXPECT_EQ(merges.back().size, pts.rows());
  }
}

TEST(WardLinkage, ThreeBlobsGiveLargeFinalGaps) {
  const auto pts = blobs({{0.0, 0.0, 0.0}, {10.0, 0.0, 0.0}, {0.0, 10.0, 0.0}}, 34, 1.0, 11);
  hds::SampleMatrix centroids(0, 3);
  for (std::size_t i = 0; i < 100; ++i) centroids.append_row(pts.row(i));
  const auto merges = hds::ward_linkage(centroids);
  const auto heights = oracle::ward_heights(to_rows(centroids));
  ASSERT_EQ(merges.size(), 99u);
  double earlier = 0.0;
  for (std::size_t i = 0; i + 2 < merges.size(); ++i) earlier = std::max(earlier, merges[i].distance);
  EXPECT_GT(merges[97].distance, 5.0 * earlier);
  EXPECT_GT(merges[98].distance, 5.0 * earlier);
  EXPECT_NEAR(merges[98].distance, heights[98], 1e-9 * heights[98]);
  EXPECT_EQ(hds::select_cluster_count(merges), 3u);
}

std::vector<hds::LinkageMerge> with_distances(const std::vector<double>& d) {
  std::vector<hds::LinkageMerge> out;
  for (std::size_t i = 0; i < d.size(); ++i) out.push_back({i, i + 1, d[i], 2});
  return out;
}

TEST(SelectClusterCount, Examples) {
  EXPECT_EQ(hds::select_cluster_count(with_distances({0.01, 0.05, 0.1, 0.12, 0.9})), 2u);
  EXPECT_EQ(hds::select_cluster_count(with_distances(std::vector<double>(20, 0.4))), 1u);
  EXPECT_EQ(hds::select_cluster_count({}), 1u);
  EXPECT_EQ(hds::select_cluster_count(with_distances({0.3})), 1u);
}

TEST(SelectClusterCount, BoundedAndScaleInvariant) {
  hds::RngStream r(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> d(60);
    double acc = 0.0;
    for (double& v : d) v = (acc += r.uniform() * r.uniform() * 3.0);
    const auto k = hds::select_cluster_count(with_distances(d));
    EXPECT_GE(k, 1u);
    EXPECT_LE(k, 10u);
    for (double& v : d) v *= 37.5;
    EXPECT_EQ(hds::select_cluster_count(with_distances(d)), k);
  }
}

}  // namespace
