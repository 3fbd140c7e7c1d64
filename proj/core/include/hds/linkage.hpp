#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hds/matrix.hpp"

namespace hds {

/// One agglomeration step. Leaves are numbered 0..n-1; the cluster created by
/// merge i gets id n + i.
struct LinkageMerge {
  std::size_t left;
  std::size_t right;
  double distance;
  std::size_t size;
};

/// Ward-linkage agglomerative clustering of the rows of `centroids`.
/// Distances follow the usual convention sqrt(2 n_a n_b / (n_a + n_b)) * |c_a - c_b|,
/// so two singletons merge at their Euclidean distance. Returns an empty list
/// for fewer than two rows.
std::vector<LinkageMerge> ward_linkage(const SampleMatrix& centroids);

/// Number of clusters left immediately before the merge whose distance jumps
/// the most over its predecessor, searched among merges that leave at most
/// `k_max` clusters. Returns 1 when no merge jumps (or the list is too short).
/// Ties resolve toward the smaller count.
std::size_t select_cluster_count(std::span<const LinkageMerge> merges, std::size_t k_max = 10);

}  // namespace hds
