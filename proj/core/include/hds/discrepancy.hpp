#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "hds/matrix.hpp"

namespace hds {

enum class DiscrepancyMetric { L2Star, CenteredL2 };

std::string_view to_string(DiscrepancyMetric metric);
std::optional<DiscrepancyMetric> parse_metric(std::string_view name);

struct DiscrepancyReport {
  DiscrepancyMetric metric;
  double value;
  std::size_t n;
  std::size_t dims;
};

/// Warnock closed form of the L2-star discrepancy (square root of T^2).
/// Throws DomainError for an empty set or entries outside [0, 1].
double l2_star(const SampleMatrix& samples);

/// Hickernell centered L2 discrepancy (square root), anchored at 1/2.
double centered_l2(const SampleMatrix& samples);

DiscrepancyReport discrepancy(const SampleMatrix& samples, DiscrepancyMetric metric);

}  // namespace hds
