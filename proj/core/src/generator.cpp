#include "hds/generator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "hds/error.hpp"
#include "hds/linkage.hpp"
#include "hds/sobol.hpp"
#include "hds/special.hpp"

namespace hds {

Bounds HdsConfig::resolved_bounds() const {
  return bounds ? *bounds : Bounds::unit(dims);
}

void HdsConfig::validate() const {
  if (n_samples < 1) throw ConfigError("hds: n_samples must be >= 1");
  if (dims < 1) throw ConfigError("hds: dims must be >= 1");
  if (dims > SobolEngine::max_dims()) {
    throw ConfigError("hds: dims exceeds the supported maximum of " +
                      std::to_string(SobolEngine::max_dims()));
  }
  if (bounds && bounds->dims() != dims) throw ConfigError("hds: bounds dimension does not match dims");
  if (k_init && *k_init < 1) throw ConfigError("hds: k_init must be >= 1");
  if (n_ellipsoids && *n_ellipsoids < 1) throw ConfigError("hds: n_ellipsoids must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("hds: epsilon must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("hds: alpha must lie in (0, 1)");
  if (!(oversampling >= 1.0)) throw ConfigError("hds: oversampling must be >= 1");
  if (weights && (weights->mean.size() != dims || weights->stddev.size() != dims)) {
    throw ConfigError("hds: weight vectors must have dims entries");
  }
  const std::size_t n_init = initial_sample_count(dims, cap_exponent);
  if (n_ellipsoids && *n_ellipsoids > n_init) {
    throw ConfigError("hds: n_ellipsoids exceeds the initial sample count");
  }
}

HdsResult hds_generate_detailed(const HdsConfig& config) {
  config.validate();
  const Bounds bounds = config.resolved_bounds();
  const std::size_t dims = config.dims;
  const RngStream root(config.seed, "hds");
  HdsResult result;
  HdsDiagnostics& diag = result.diagnostics;

  // Initial Sobol cover of the unit cube.
  diag.initial_samples = initial_sample_count(dims, config.cap_exponent);
  SobolEngine engine(dims);
  SampleMatrix initial = engine.draw(diag.initial_samples);

  if (config.weights) {
    RngStream rng = root.derive("weights");
    WeightedSample weighted = apply_gaussian_weights(initial, *config.weights, bounds, rng);
    initial = std::move(weighted.points);
    diag.weights_fell_back = weighted.fell_back;
  }

  // Ellipsoid count: fixed by the caller, or from the dendrogram of coarse centroids.
  std::size_t k = 1;
  if (config.n_ellipsoids) {
    k = *config.n_ellipsoids;
  } else {
    diag.k_init = std::min(config.k_init.value_or(initial_cluster_count(dims)), initial.rows());
    RngStream rng = root.derive("kmeans-init");
    const KMeansModel coarse = minibatch_kmeans(initial, diag.k_init, rng, config.kmeans);
    const auto merges = ward_linkage(coarse.centroids);
    k = select_cluster_count(merges, config.k_max);
  }

  RngStream fit_rng = root.derive("kmeans-final");
  std::vector<EllipsoidModel> models =
      build_ellipsoids(initial, k, fit_rng, config.epsilon, config.kmeans);
  diag.ellipsoids = models.size();

  std::vector<std::size_t> counts;
  counts.reserve(models.size());
  for (const auto& m : models) counts.push_back(m.weight_count);
  const std::vector<std::size_t> allocation = allocate_samples(counts, config.n_samples);
  assert(std::accumulate(allocation.begin(), allocation.end(), std::size_t{0}) == config.n_samples);
  for (std::size_t i = 0; i < models.size(); ++i) models[i].allocation = allocation[i];

  diag.lambda = radial_scale_factor(dims, config.alpha);
  SobolEngine radial(1);
  RngStream direction_rng = root.derive("directions");

  // Per-ellipsoid candidates; each keeps at most its allocation of in-cube points.
  SampleMatrix kept(0, dims, Frame::UnitCube);
  kept.reserve_rows(config.n_samples);
  std::size_t rejected = 0;
  for (const auto& model : models) {
    if (model.allocation == 0) continue;
    const auto count = static_cast<std::size_t>(
                           std::ceil(config.oversampling * static_cast<double>(model.allocation))) + 16;
    const SampleMatrix candidates = sample_ellipsoid(model, count, diag.lambda, radial, direction_rng);
    diag.candidates += count;
    std::size_t taken = 0;
    for (std::size_t i = 0; i < candidates.rows(); ++i) {
      const auto row = candidates.row(i);
      if (!inside_unit_cube(row)) {
        ++rejected;
      } else if (taken < model.allocation) {
        kept.append_row(row);
        ++taken;
      }
    }
  }

  std::vector<std::vector<double>> centers;
  centers.reserve(models.size());
  for (const auto& m : models) centers.push_back(m.center);
  RngStream fill_rng = root.derive("fill");
  FillResult filled = reject_and_fill(kept, config.n_samples, fill_rng, centers, config.fill);
  diag.rejected = rejected;
  diag.filled = filled.filled;
  diag.degenerate_fill = filled.degenerate;
  diag.models = std::move(models);

  result.samples = std::move(filled.points);
  if (!config.normalize) {
    result.samples = denormalize(result.samples, bounds);
    // Guard against a last-ulp overshoot of x * range + lower.
    for (std::size_t i = 0; i < result.samples.rows(); ++i) {
      auto row = result.samples.row(i);
      for (std::size_t d = 0; d < dims; ++d) {
        row[d] = std::clamp(row[d], bounds.lower()[d], bounds.upper()[d]);
      }
    }
  }
  return result;
}

SampleMatrix hds_generate(const HdsConfig& config) { return hds_generate_detailed(config).samples; }

}  // namespace hds
