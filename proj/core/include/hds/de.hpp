#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hds/bounds.hpp"
#include "hds/matrix.hpp"

namespace hds {

using Objective = std::function<double(std::span<const double>)>;

struct DeConfig {
  double f_low = 0.5;
  double f_high = 1.0;
  double cr = 0.7;
  std::size_t max_iter = 100;
  /// Relative population-energy spread that stops the run; 0 disables.
  double tol = 0.0;
  double atol = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DeResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  /// Best value after the initial evaluation and after every generation.
  std::vector<double> best_history;
  std::size_t generations = 0;
  std::size_t evaluations = 0;
  double wall_time = 0.0;
};

/// best1bin differential evolution started from `init_population` (rows in
/// `bounds`). Dither F ~ U(f_low, f_high) is drawn once per generation,
/// out-of-bounds trial coordinates are resampled uniformly, selection is
/// greedy and the incumbent best is updated immediately. Non-finite objective
/// values count as +inf.
DeResult differential_evolution(const Objective& objective, const Bounds& bounds,
                                const SampleMatrix& init_population, const DeConfig& config);

enum class InitMethod { Hds, Sobol };

std::string_view to_string(InitMethod method);
std::optional<InitMethod> parse_method(std::string_view name);

/// Initial population in the bounds frame. Sobol skips the origin point;
/// HDS uses `seed` for every stochastic stage.
SampleMatrix make_init_population(InitMethod method, std::size_t n, const Bounds& bounds,
                                  std::uint64_t seed);

/// One optimizer run in a benchmark experiment.
struct TrialRecord {
  InitMethod method = InitMethod::Hds;
  std::string function;
  std::size_t dims = 0;
  std::size_t n = 0;
  std::uint64_t trial = 0;
  double final_error = 0.0;
  double wall_time = 0.0;
  std::size_t evaluations = 0;
};

}  // namespace hds
