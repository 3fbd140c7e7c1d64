#include "hds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "hds/error.hpp"
#include "hds/rng.hpp"
#include "hds/special.hpp"

namespace hds {

double geometric_mean(std::span<const double> values, double floor) {
  if (values.empty()) throw ConfigError("geometric_mean: no values");
  double acc = 0.0;
  for (double v : values) acc += std::log(std::max(v, floor));
  return std::exp(acc / static_cast<double>(values.size()));
}

namespace {

// Exact two-sided p for the signed-rank statistic with integer ranks 1..n.
double exact_signed_rank_p(std::size_t n, double statistic) {
  const std::size_t max_sum = n * (n + 1) / 2;
  std::vector<double> counts(max_sum + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t s = max_sum; s >= r; --s) counts[s] += counts[s - r];
  }
  const auto w = static_cast<std::size_t>(std::floor(statistic + 1e-9));
  double tail = 0.0;
  for (std::size_t s = 0; s <= w && s <= max_sum; ++s) tail += counts[s];
  const double total = std::ldexp(1.0, static_cast<int>(n));
  return std::min(1.0, 2.0 * tail / total);
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences) {
  std::vector<double> d;
  for (double v : differences) {
    if (!std::isfinite(v)) throw DomainError("wilcoxon: non-finite difference");
    if (v != 0.0) d.push_back(v);
  }
  WilcoxonResult result;
  result.n_used = d.size();
  if (d.empty()) return result;

  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });

  std::vector<double> ranks(n);
  double tie_term = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    const double size = static_cast<double>(j - i + 1);
    if (size > 1) {
      ties = true;
      tie_term += size * size * size - size;
    }
    i = j + 1;
  }

  double w_plus = 0.0;
  double w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) (d[i] > 0 ? w_plus : w_minus) += ranks[i];
  result.statistic = std::min(w_plus, w_minus);

  if (n <= 50 && !ties) {
    result.exact = true;
    result.p_value = exact_signed_rank_p(n, result.statistic);
    return result;
  }
  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  if (!(var > 0.0)) {
    result.p_value = 1.0;
    return result;
  }
  // Continuity correction toward the mean.
  const double diff = result.statistic - mean;
  const double z = (diff + (diff < 0 ? 0.5 : diff > 0 ? -0.5 : 0.0)) / std::sqrt(var);
  result.p_value = std::min(1.0, 2.0 * normal_cdf(-std::abs(z)));
  return result;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ConfigError("quantile: no values");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

struct Pair {
  double hds_log;
  double sobol_log;
};

// Failed runs (+inf or NaN error) rank as the worst possible outcome.
double log_error(double error) {
  if (!std::isfinite(error)) return std::log(std::numeric_limits<double>::max());
  return std::log(std::max(error, kErrorFloor));
}

std::string describe_key(const TrialRecord& r) {
  std::ostringstream out;
  out << to_string(r.method) << "/" << r.function << "/D=" << r.dims << "/N=" << r.n
      << "/trial=" << r.trial;
  return out.str();
}

}  // namespace

std::vector<ComparisonSummary> summarize(std::span<const TrialRecord> records,
                                         const SummaryOptions& options) {
  using CellKey = std::pair<std::size_t, std::size_t>;  // (n, dims)
  using PairKey = std::tuple<std::string, std::uint64_t>;
  struct Slot {
    const TrialRecord* hds = nullptr;
    const TrialRecord* sobol = nullptr;
  };
  std::map<CellKey, std::map<PairKey, Slot>> cells;

  for (const auto& r : records) {
    Slot& slot = cells[{r.n, r.dims}][{r.function, r.trial}];
    const TrialRecord*& target = r.method == InitMethod::Hds ? slot.hds : slot.sobol;
    if (target) throw StateError("summarize: duplicate record " + describe_key(r));
    target = &r;
  }

  std::vector<ComparisonSummary> out;
  for (const auto& [cell, pairs] : cells) {
    // function -> paired log errors (trial order)
    std::map<std::string, std::vector<Pair>> by_function;
    double hds_time = 0.0;
    double sobol_time = 0.0;
    std::vector<double> diffs;
    for (const auto& [key, slot] : pairs) {
      if (!slot.hds || !slot.sobol) {
        throw StateError("summarize: unpaired record " + describe_key(slot.hds ? *slot.hds : *slot.sobol));
      }
      const double h = log_error(slot.hds->final_error);
      const double s = log_error(slot.sobol->final_error);
      by_function[std::get<0>(key)].push_back({h, s});
      diffs.push_back(s - h);
      hds_time += slot.hds->wall_time;
      sobol_time += slot.sobol->wall_time;
    }

    ComparisonSummary summary;
    summary.n = cell.first;
    summary.dims = cell.second;
    summary.functions = by_function.size();
    summary.trials = by_function.empty() ? 0 : by_function.begin()->second.size();

    // Per-function GM over trials, then GM across functions.
    double hds_acc = 0.0;
    double sobol_acc = 0.0;
    for (const auto& [name, list] : by_function) {
      double h = 0.0;
      double s = 0.0;
      for (const auto& p : list) {
        h += p.hds_log;
        s += p.sobol_log;
      }
      hds_acc += h / static_cast<double>(list.size());
      sobol_acc += s / static_cast<double>(list.size());
    }
    const double nf = static_cast<double>(by_function.size());
    summary.hds_gm_error = std::exp(hds_acc / nf);
    summary.sobol_gm_error = std::exp(sobol_acc / nf);
    summary.ratio = std::exp((sobol_acc - hds_acc) / nf);
    summary.p_value = wilcoxon_signed_rank(diffs).p_value;
    summary.runtime_ratio = hds_time > 0.0 ? sobol_time / hds_time : 1.0;

    // Percentile bootstrap of the ratio; trials are resampled within each function.
    RngStream rng(options.bootstrap_seed,
                  "bootstrap:" + std::to_string(cell.first) + ":" + std::to_string(cell.second));
    std::vector<double> replicates;
    replicates.reserve(options.resamples);
    for (std::size_t b = 0; b < options.resamples; ++b) {
      double acc = 0.0;
      for (const auto& [name, list] : by_function) {
        double s = 0.0;
        for (std::size_t t = 0; t < list.size(); ++t) {
          const Pair& p = list[rng.index(list.size())];
          s += p.sobol_log - p.hds_log;
        }
        acc += s / static_cast<double>(list.size());
      }
      replicates.push_back(std::exp(acc / nf));
    }
    if (!replicates.empty()) {
      summary.ci95_low = quantile(replicates, 0.025);
      summary.ci95_high = quantile(replicates, 0.975);
    } else {
      summary.ci95_low = summary.ci95_high = summary.ratio;
    }
    out.push_back(summary);
  }

  std::sort(out.begin(), out.end(), [](const ComparisonSummary& a, const ComparisonSummary& b) {
    return a.n != b.n ? a.n > b.n : a.dims < b.dims;
  });
  return out;
}

}  // namespace hds
