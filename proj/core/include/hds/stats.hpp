#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hds/de.hpp"

namespace hds {

inline constexpr double kErrorFloor = 1e-12;

/// Geometric mean with every value floored at `floor` first.
double geometric_mean(std::span<const double> values, double floor = kErrorFloor);

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double p_value = 1.0;    // two-sided
  std::size_t n_used = 0;  // non-zero differences
  bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired differences. Zero
/// differences are discarded; if none remain the p-value is 1. Small samples
/// without ties use the exact null distribution, otherwise the normal
/// approximation with tie and continuity corrections.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences);

/// Linear-interpolation quantile (type 7) of unsorted data.
double quantile(std::vector<double> values, double q);

struct ComparisonSummary {
  std::size_t n = 0;
  std::size_t dims = 0;
  std::size_t functions = 0;
  std::size_t trials = 0;
  double hds_gm_error = 0.0;
  double sobol_gm_error = 0.0;
  /// sobol_gm_error / hds_gm_error; > 1 favours HDS.
  double ratio = 1.0;
  double p_value = 1.0;
  double ci95_low = 1.0;
  double ci95_high = 1.0;
  /// Sobol total time / HDS total time; < 1 means HDS ran slower.
  double runtime_ratio = 1.0;
};

struct SummaryOptions {
  std::uint64_t bootstrap_seed = 0;
  std::size_t resamples = 10000;
};

/// One summary per (n, dims) cell, ordered by n descending then dims.
/// Throws StateError naming the key of any HDS/Sobol record without a partner.
std::vector<ComparisonSummary> summarize(std::span<const TrialRecord> records,
                                         const SummaryOptions& options = {});

}  // namespace hds
