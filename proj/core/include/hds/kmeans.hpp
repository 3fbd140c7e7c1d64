#pragma once

#include <cstddef>
#include <vector>

#include "hds/matrix.hpp"
#include "hds/rng.hpp"

namespace hds {

struct KMeansModel {
  SampleMatrix centroids;            // k x D
  std::vector<std::size_t> labels;   // one per input point
  std::vector<std::size_t> counts;   // points per centroid, all > 0
  double inertia = 0.0;              // sum of squared distances to assigned centroid
};

struct MiniBatchOptions {
  std::size_t batch_size = 1024;     // capped at the number of points
  std::size_t max_batches = 100;
  std::size_t seeding_subsample = 2048;
};

/// Mini-batch k-means with k-means++ seeding on a seeded subsample.
///
/// After the mini-batch phase, centroids are moved once to the mean of their
/// members and a full assignment pass produces labels and counts. Empty
/// clusters are reseeded at the point farthest from its centroid.
/// Throws ConfigError when k is 0 or exceeds the number of points.
KMeansModel minibatch_kmeans(const SampleMatrix& points, std::size_t k, RngStream& rng,
                             const MiniBatchOptions& options = {});

/// Initial centroid count: `default_k` up to 100 dimensions, then
/// max(10, round(default_k * 100 / D)).
std::size_t initial_cluster_count(std::size_t dims, std::size_t default_k = 100);

/// Index of the nearest centroid (lowest index on ties) and its squared distance.
std::pair<std::size_t, double> nearest_centroid(std::span<const double> point,
                                                const SampleMatrix& centroids);

}  // namespace hds
