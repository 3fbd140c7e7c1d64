#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hds/bounds.hpp"
#include "hds/ellipsoid.hpp"
#include "hds/fill.hpp"
#include "hds/kmeans.hpp"
#include "hds/matrix.hpp"
#include "hds/weights.hpp"

namespace hds {

/// Generation knobs. `bounds` defaults to the unit cube of `dims` dimensions.
struct HdsConfig {
  std::size_t n_samples = 0;
  std::size_t dims = 0;
  std::optional<Bounds> bounds;
  std::uint64_t seed = 0;
  /// Overrides the initial centroid count used for the dendrogram.
  std::optional<std::size_t> k_init;
  /// Fixes the ellipsoid count and skips the hierarchical clustering.
  std::optional<std::size_t> n_ellipsoids;
  std::optional<GaussianWeightSpec> weights;
  /// true: return unit-cube samples; false: map back onto the bounds.
  bool normalize = false;
  int cap_exponent = 15;
  double epsilon = 1e-12;
  double alpha = 0.9999;
  std::size_t k_max = 10;
  double oversampling = 1.5;
  MiniBatchOptions kmeans;
  FillOptions fill;

  Bounds resolved_bounds() const;
  /// Throws ConfigError on an unusable configuration.
  void validate() const;
};

/// What the pipeline decided along the way.
struct HdsDiagnostics {
  std::size_t initial_samples = 0;
  std::size_t k_init = 0;
  std::size_t ellipsoids = 0;
  double lambda = 0.0;
  std::vector<EllipsoidModel> models;
  std::size_t candidates = 0;
  std::size_t rejected = 0;
  std::size_t filled = 0;
  bool weights_fell_back = false;
  bool degenerate_fill = false;
};

struct HdsResult {
  SampleMatrix samples;
  HdsDiagnostics diagnostics;
};

/// Runs the full sampling pipeline; output is n_samples x dims, inside the
/// bounds (or the unit cube when normalize is set) and a pure function of the
/// configuration.
HdsResult hds_generate_detailed(const HdsConfig& config);
SampleMatrix hds_generate(const HdsConfig& config);

}  // namespace hds
