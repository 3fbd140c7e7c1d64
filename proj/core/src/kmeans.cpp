#include "hds/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hds/error.hpp"

namespace hds {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

// k-means++ over the rows of `points` listed in `candidates`.
SampleMatrix kmeans_plus_plus(const SampleMatrix& points, const std::vector<std::size_t>& candidates,
                              std::size_t k, RngStream& rng) {
  const std::size_t m = candidates.size();
  SampleMatrix centers(0, points.cols());
  centers.reserve_rows(k);
  std::vector<double> closest(m, std::numeric_limits<double>::infinity());
  std::vector<char> taken(m, 0);

  std::size_t pick = rng.index(m);
  for (std::size_t c = 0; c < k; ++c) {
    taken[pick] = 1;
    const auto center = points.row(candidates[pick]);
    centers.append_row(center);
    if (c + 1 == k) break;

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d2 = squared_distance(points.row(candidates[i]), center);
      closest[i] = std::min(closest[i], d2);
      if (!taken[i]) total += closest[i];
    }
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = m;
      std::size_t last = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (taken[i]) continue;
        last = i;
        acc += closest[i];
        if (acc > target && closest[i] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick == m) pick = last;
    } else {
      // Every remaining candidate coincides with a chosen center.
      std::size_t remaining = rng.index(m - c - 1);
      for (std::size_t i = 0; i < m; ++i) {
        if (taken[i]) continue;
        if (remaining == 0) {
          pick = i;
          break;
        }
        --remaining;
      }
    }
  }
  return centers;
}

double assign_all(const SampleMatrix& points, const SampleMatrix& centroids,
                  std::vector<std::size_t>& labels, std::vector<double>& dist2) {
  const std::size_t n = points.rows();
  labels.resize(n);
  dist2.resize(n);
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [label, d2] = nearest_centroid(points.row(i), centroids);
    labels[i] = label;
    dist2[i] = d2;
    inertia += d2;
  }
  return inertia;
}

}  // namespace

std::pair<std::size_t, double> nearest_centroid(std::span<const double> point,
                                                const SampleMatrix& centroids) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  const std::size_t dims = point.size();
  constexpr std::size_t kChunk = 16;
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double* center = centroids.row(c).data();
    double s = 0.0;
    std::size_t j = 0;
    // Partial sums are checked per chunk; abandoned candidates cannot win.
    for (; j + kChunk <= dims && s < best_d2; j += kChunk) {
      for (std::size_t t = j; t < j + kChunk; ++t) {
        const double diff = point[t] - center[t];
        s += diff * diff;
      }
    }
    if (s >= best_d2) continue;
    for (; j < dims; ++j) {
      const double diff = point[j] - center[j];
      s += diff * diff;
    }
    if (s < best_d2) {
      best_d2 = s;
      best = c;
    }
  }
  return {best, best_d2};
}

KMeansModel minibatch_kmeans(const SampleMatrix& points, std::size_t k, RngStream& rng,
                             const MiniBatchOptions& options) {
  const std::size_t n = points.rows();
  const std::size_t dims = points.cols();
  if (k == 0) throw ConfigError("minibatch_kmeans: k must be >= 1");
  if (k > n) {
    throw ConfigError("minibatch_kmeans: k = " + std::to_string(k) + " exceeds point count " +
                      std::to_string(n));
  }

  // Seeding subsample: a seeded partial shuffle, always large enough to hold k centers.
  const std::size_t subsample = std::min(n, std::max(options.seeding_subsample, k));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < subsample && i + 1 < n; ++i) {
    std::swap(order[i], order[i + rng.index(n - i)]);
  }
  order.resize(subsample);
  std::sort(order.begin(), order.end());
  SampleMatrix centroids = kmeans_plus_plus(points, order, k, rng);

  const std::size_t batch = std::clamp<std::size_t>(options.batch_size, 1, n);
  std::vector<double> seen(k, 0.0);
  std::vector<std::size_t> batch_index(batch);
  std::vector<std::size_t> batch_label(batch);
  for (std::size_t b = 0; b < options.max_batches; ++b) {
    if (batch == n) {
      std::iota(batch_index.begin(), batch_index.end(), 0);
    } else {
      for (auto& idx : batch_index) idx = rng.index(n);
    }
    for (std::size_t i = 0; i < batch; ++i) {
      batch_label[i] = nearest_centroid(points.row(batch_index[i]), centroids).first;
    }
    for (std::size_t i = 0; i < batch; ++i) {
      const std::size_t c = batch_label[i];
      seen[c] += 1.0;
      const double eta = 1.0 / seen[c];
      auto center = centroids.row(c);
      const auto x = points.row(batch_index[i]);
      for (std::size_t j = 0; j < dims; ++j) center[j] += eta * (x[j] - center[j]);
    }
  }

  KMeansModel model;
  std::vector<double> dist2;
  assign_all(points, centroids, model.labels, dist2);

  // One mean-update step over the full set.
  {
    SampleMatrix sums(k, dims);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = model.labels[i];
      ++counts[c];
      auto s = sums.row(c);
      const auto x = points.row(i);
      for (std::size_t j = 0; j < dims; ++j) s[j] += x[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      auto center = centroids.row(c);
      const auto s = sums.row(c);
      for (std::size_t j = 0; j < dims; ++j) center[j] = s[j] / static_cast<double>(counts[c]);
    }
  }

  model.inertia = assign_all(points, centroids, model.labels, dist2);
  model.counts.assign(k, 0);
  for (std::size_t label : model.labels) ++model.counts[label];

  // Reseed empty clusters at the point farthest from its own centroid.
  for (std::size_t guard = 0; guard < k; ++guard) {
    const auto empty = std::find(model.counts.begin(), model.counts.end(), std::size_t{0});
    if (empty == model.counts.end()) break;
    const auto c = static_cast<std::size_t>(empty - model.counts.begin());
    std::size_t far = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (model.counts[model.labels[i]] < 2) continue;
      if (far == n || dist2[i] > dist2[far]) far = i;
    }
    if (far == n) break;
    auto center = centroids.row(c);
    std::copy(points.row(far).begin(), points.row(far).end(), center.begin());
    model.inertia = assign_all(points, centroids, model.labels, dist2);
    model.counts.assign(k, 0);
    for (std::size_t label : model.labels) ++model.counts[label];
  }

  model.centroids = std::move(centroids);
  return model;
}

std::size_t initial_cluster_count(std::size_t dims, std::size_t default_k) {
  if (dims == 0) throw ConfigError("initial_cluster_count: dims must be >= 1");
  if (dims <= 100) return default_k;
  const double scaled = std::round(static_cast<double>(default_k) * 100.0 / static_cast<double>(dims));
  return std::max<std::size_t>(10, static_cast<std::size_t>(scaled));
}

}  // namespace hds
