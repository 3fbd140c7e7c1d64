#include "hds/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hds/error.hpp"
#include "hds/pca.hpp"
#include "hds/sampling.hpp"

namespace hds {

std::vector<EllipsoidModel> build_ellipsoids(const SampleMatrix& initial, std::size_t k,
                                             RngStream& rng, double epsilon,
                                             const MiniBatchOptions& options) {
  const std::size_t dims = initial.cols();
  const KMeansModel fit = minibatch_kmeans(initial, k, rng, options);

  std::vector<SampleMatrix> members(k, SampleMatrix(0, dims));
  for (std::size_t c = 0; c < k; ++c) members[c].reserve_rows(fit.counts[c]);
  for (std::size_t i = 0; i < initial.rows(); ++i) members[fit.labels[i]].append_row(initial.row(i));

  std::vector<EllipsoidModel> models;
  models.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (fit.counts[c] == 0) continue;
    EllipsoidModel model;
    const auto centroid = fit.centroids.row(c);
    model.center.assign(centroid.begin(), centroid.end());
    model.weight_count = fit.counts[c];
    if (fit.counts[c] < 2) {
      model.rotation.assign(dims * dims, 0.0);
      for (std::size_t d = 0; d < dims; ++d) model.rotation[d * dims + d] = 1.0;
      model.semi_axes.assign(dims, std::sqrt(epsilon));
    } else {
      PcaResult pca = pca_fit(members[c], epsilon);
      model.rotation = std::move(pca.components);
      model.semi_axes = std::move(pca.semi_axes);
    }
    models.push_back(std::move(model));
  }
  return models;
}

std::vector<std::size_t> allocate_samples(std::span<const std::size_t> counts, std::size_t total) {
  const std::size_t k = counts.size();
  const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (k == 0 || !(sum >= 1.0)) throw ConfigError("allocate_samples: counts must sum to >= 1");

  std::vector<std::size_t> out(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = static_cast<std::size_t>(
        std::llround(static_cast<double>(total) * static_cast<double>(counts[i]) / sum));
    assigned += out[i];
  }

  // Largest count first, lowest index on ties.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  while (assigned < total) {
    ++out[order.front()];
    ++assigned;
  }
  while (assigned > total) {
    const auto victim = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return out[i] > 0; });
    --out[*victim];
    --assigned;
  }
  return out;
}

SampleMatrix sample_ellipsoid(const EllipsoidModel& model, std::size_t count, double lambda,
                              SobolEngine& radial, RngStream& rng) {
  const std::size_t dims = model.dims();
  if (count == 0) throw ConfigError("sample_ellipsoid: count must be >= 1");
  if (radial.dims() != 1) throw ConfigError("sample_ellipsoid: radial engine must be one-dimensional");
  if (model.rotation.size() != dims * dims || model.semi_axes.size() != dims) {
    throw ConfigError("sample_ellipsoid: malformed ellipsoid model");
  }

  SampleMatrix directions = marsaglia_unit_directions(count, dims, rng);
  SampleMatrix out(count, dims, Frame::UnitCube);
  const double inv_dims = 1.0 / static_cast<double>(dims);
  std::vector<double> scaled(dims);
  double q = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    radial.next({&q, 1});
    const double radius = std::pow(q, inv_dims) * lambda;
    const auto u = directions.row(i);
    for (std::size_t a = 0; a < dims; ++a) scaled[a] = u[a] * radius * model.semi_axes[a];

    // x = c + sum_a scaled[a] * axis_a
    auto x = out.row(i);
    std::copy(model.center.begin(), model.center.end(), x.begin());
    for (std::size_t a = 0; a < dims; ++a) {
      const double s = scaled[a];
      const double* axis = model.rotation.data() + a * dims;
      for (std::size_t d = 0; d < dims; ++d) x[d] += s * axis[d];
    }
  }
  return out;
}

}  // namespace hds
