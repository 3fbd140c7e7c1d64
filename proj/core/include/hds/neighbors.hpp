#pragma once

#include <cstddef>
#include <vector>

#include "hds/matrix.hpp"

namespace hds {

/// Mean Euclidean distance from each row to its `k` nearest other rows
/// (k is capped at rows - 1; a single row gets 0).
///
/// Sets up to `brute_force_limit` rows are scanned exhaustively; larger sets
/// go through an exact k-d tree. Both paths return identical values.
std::vector<double> mean_knn_distance(const SampleMatrix& points, std::size_t k,
                                      std::size_t brute_force_limit = 20000);

}  // namespace hds
