#pragma once

#include <cstddef>
#include <vector>

#include "hds/matrix.hpp"
#include "hds/rng.hpp"

namespace hds {

struct FillOptions {
  std::size_t neighbors = 8;
  double sparse_fraction = 0.1;
  double min_stddev = 0.01;
  double max_stddev = 0.3;
  std::size_t brute_force_limit = 20000;
};

struct FillResult {
  SampleMatrix points;
  std::size_t rejected = 0;
  std::size_t filled = 0;
  /// No valid candidate and no fallback center: the output is plain Sobol.
  bool degenerate = false;
};

/// Keeps candidates inside [0,1]^D (in order, up to `target`) and tops the set
/// up to exactly `target` rows with truncated-normal points placed around the
/// sparsest kept samples, measured by mean k-nearest-neighbour distance.
///
/// With no valid candidate the fill is centered on `fallback_centers`; with
/// neither, fresh Sobol points are returned and `degenerate` is set.
FillResult reject_and_fill(const SampleMatrix& candidates, std::size_t target, RngStream& rng,
                           const std::vector<std::vector<double>>& fallback_centers = {},
                           const FillOptions& options = {});

}  // namespace hds
