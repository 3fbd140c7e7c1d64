#pragma once

#include <vector>

#include "hds/bounds.hpp"
#include "hds/matrix.hpp"
#include "hds/rng.hpp"

namespace hds {

/// Prior emphasis expressed in the original (bounds) frame.
struct GaussianWeightSpec {
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct WeightedSample {
  SampleMatrix points;
  /// Set when every weight underflowed and the input was returned unchanged.
  bool fell_back = false;
};

/// Reweights a unit-cube sample by a product Gaussian centered at `spec.mean`
/// and resamples it (systematic, with replacement) to the same size.
WeightedSample apply_gaussian_weights(const SampleMatrix& initial, const GaussianWeightSpec& spec,
                                      const Bounds& bounds, RngStream& rng);

}  // namespace hds
