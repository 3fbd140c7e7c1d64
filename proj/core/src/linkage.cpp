#include "hds/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hds/error.hpp"

namespace hds {

std::vector<LinkageMerge> ward_linkage(const SampleMatrix& centroids) {
  const std::size_t n = centroids.rows();
  std::vector<LinkageMerge> merges;
  if (n < 2) return merges;
  merges.reserve(n - 1);

  // Lance-Williams recurrence on squared Ward distances.
  std::vector<double> d2(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      const auto a = centroids.row(i);
      const auto b = centroids.row(j);
      for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
      d2[i * n + j] = d2[j * n + i] = s;
    }
  }
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> node_id(n);
  std::vector<char> active(n, 1);
  for (std::size_t i = 0; i < n; ++i) node_id[i] = i;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && d2[i * n + j] < best) {
          best = d2[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }

    const double ni = static_cast<double>(size[bi]);
    const double nj = static_cast<double>(size[bj]);
    merges.push_back({std::min(node_id[bi], node_id[bj]), std::max(node_id[bi], node_id[bj]),
                      std::sqrt(std::max(0.0, best)), size[bi] + size[bj]});

    // Slot bi becomes the merged cluster; slot bj retires.
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double nk = static_cast<double>(size[k]);
      const double total = ni + nj + nk;
      const double updated =
          ((ni + nk) * d2[bi * n + k] + (nj + nk) * d2[bj * n + k] - nk * best) / total;
      d2[bi * n + k] = d2[k * n + bi] = std::max(0.0, updated);
    }
    active[bj] = 0;
    size[bi] += size[bj];
    node_id[bi] = n + step;
  }
  return merges;
}

std::size_t select_cluster_count(std::span<const LinkageMerge> merges, std::size_t k_max) {
  const std::size_t m = merges.size();
  if (m < 2 || k_max < 2) return 1;
  const std::size_t leaves = m + 1;

  double scale = 0.0;
  for (const auto& merge : merges) scale = std::max(scale, std::abs(merge.distance));
  const double tolerance = 1e-12 * scale;

  std::size_t best_k = 1;
  double best_gap = 0.0;
  // Walk from the final merge backwards so ties keep the smaller count.
  for (std::size_t i = m - 1; i >= 1; --i) {
    const std::size_t clusters_before = leaves - i;
    if (clusters_before > k_max) break;
    const double gap = merges[i].distance - merges[i - 1].distance;
    if (gap > tolerance && gap > best_gap) {
      best_gap = gap;
      best_k = clusters_before;
    }
  }
  return best_k;
}

}  // namespace hds
