#pragma once

#include <cstddef>
#include <span>

#include "hds/matrix.hpp"
#include "hds/rng.hpp"

namespace hds {

/// `count` x `dims` matrix of independent uniformly distributed unit vectors
/// (normalized standard normal vectors). Zero-norm draws are redrawn.
SampleMatrix marsaglia_unit_directions(std::size_t count, std::size_t dims, RngStream& rng);

/// One draw of N(center, stddev^2) conditioned on [lo, hi]. Uses rejection
/// while the acceptance probability is at least 1%, inverse-CDF otherwise.
/// The result lies strictly inside (lo, hi).
double truncated_normal(double center, double stddev, double lo, double hi, RngStream& rng);

/// Coordinate-wise truncated normal point inside the unit cube.
void truncated_normal_draw(std::span<const double> center, std::span<const double> stddev,
                           RngStream& rng, std::span<double> out);

}  // namespace hds
