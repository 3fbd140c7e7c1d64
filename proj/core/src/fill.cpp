#include "hds/fill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hds/error.hpp"
#include "hds/neighbors.hpp"
#include "hds/sampling.hpp"
#include "hds/sobol.hpp"

namespace hds {

FillResult reject_and_fill(const SampleMatrix& candidates, std::size_t target, RngStream& rng,
                           const std::vector<std::vector<double>>& fallback_centers,
                           const FillOptions& options) {
  const std::size_t dims = candidates.cols();
  if (dims == 0) throw ConfigError("reject_and_fill: candidates need at least one column");
  if (!(options.min_stddev > 0.0 && options.max_stddev >= options.min_stddev)) {
    throw ConfigError("reject_and_fill: invalid stddev clamp");
  }

  FillResult result;
  result.points = SampleMatrix(0, dims, Frame::UnitCube);
  result.points.reserve_rows(target);
  for (std::size_t i = 0; i < candidates.rows(); ++i) {
    const auto row = candidates.row(i);
    if (!inside_unit_cube(row)) {
      ++result.rejected;
      continue;
    }
    if (result.points.rows() < target) result.points.append_row(row);
  }
  if (result.points.rows() == target) return result;

  std::vector<double> point(dims);
  std::vector<double> spread(dims);

  if (result.points.empty()) {
    if (fallback_centers.empty()) {
      SobolEngine engine(dims);
      engine.skip(1);
      result.points = engine.draw(target);
      result.filled = target;
      result.degenerate = true;
      return result;
    }
    // Seed the set with one point so the neighbour-driven loop below has material.
    std::fill(spread.begin(), spread.end(), options.max_stddev);
    for (std::size_t i = 0; result.points.rows() < std::min<std::size_t>(target, fallback_centers.size()); ++i) {
      const auto& center = fallback_centers[i];
      if (center.size() != dims) throw ConfigError("reject_and_fill: fallback center dimension mismatch");
      truncated_normal_draw(center, spread, rng, point);
      result.points.append_row(point);
      ++result.filled;
    }
  }

  while (result.points.rows() < target) {
    const std::size_t kept = result.points.rows();
    const std::vector<double> sparsity =
        mean_knn_distance(result.points, options.neighbors, options.brute_force_limit);

    const auto sparse_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(options.sparse_fraction * static_cast<double>(kept))));
    std::vector<std::size_t> order(kept);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sparsity[a] > sparsity[b]; });
    order.resize(std::min(sparse_count, kept));

    // At most doubles the set per round so sparsity is re-measured as it grows.
    const std::size_t round = std::min(target - kept, kept);
    for (std::size_t i = 0; i < round; ++i) {
      const std::size_t center = order[i % order.size()];
      // A lone point has no neighbours and counts as maximally sparse.
      const double raw = kept > 1 ? sparsity[center] : options.max_stddev;
      std::fill(spread.begin(), spread.end(),
                std::clamp(raw, options.min_stddev, options.max_stddev));
      const auto c = result.points.row(center);
      const std::vector<double> center_copy(c.begin(), c.end());
      truncated_normal_draw(center_copy, spread, rng, point);
      result.points.append_row(point);
      ++result.filled;
    }
  }
  return result;
}

}  // namespace hds
