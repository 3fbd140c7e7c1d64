#include "hds/de.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "hds/error.hpp"
#include "hds/generator.hpp"
#include "hds/rng.hpp"
#include "hds/sobol.hpp"

namespace hds {

void DeConfig::validate() const {
  if (!(f_low > 0.0 && f_low <= f_high && f_high <= 2.0)) {
    throw ConfigError("de: mutation range must satisfy 0 < f_low <= f_high <= 2");
  }
  if (!(cr >= 0.0 && cr <= 1.0)) throw ConfigError("de: cr must lie in [0, 1]");
  if (max_iter < 1) throw ConfigError("de: max_iter must be >= 1");
  if (!(tol >= 0.0) || !(atol >= 0.0)) throw ConfigError("de: tolerances must be >= 0");
}

namespace {

double safe_eval(const Objective& objective, std::span<const double> x) {
  const double v = objective(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

bool converged(const std::vector<double>& energies, const DeConfig& config) {
  if (config.tol == 0.0 && config.atol == 0.0) return false;
  double mean = 0.0;
  for (double e : energies) {
    if (!std::isfinite(e)) return false;
    mean += e;
  }
  mean /= static_cast<double>(energies.size());
  double var = 0.0;
  for (double e : energies) var += (e - mean) * (e - mean);
  const double sd = std::sqrt(var / static_cast<double>(energies.size()));
  return sd <= config.atol + config.tol * std::abs(mean);
}

}  // namespace

DeResult differential_evolution(const Objective& objective, const Bounds& bounds,
                                const SampleMatrix& init_population, const DeConfig& config) {
  config.validate();
  const std::size_t np = init_population.rows();
  const std::size_t dims = init_population.cols();
  if (np < 5) throw ConfigError("de: population must have at least 5 members");
  if (dims != bounds.dims()) throw ConfigError("de: population dimension does not match bounds");
  for (std::size_t i = 0; i < np; ++i) {
    if (!bounds.contains(init_population.row(i))) {
      throw ConfigError("de: initial member " + std::to_string(i) + " lies outside the bounds");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  RngStream rng(config.seed, "de");
  SampleMatrix population = init_population;
  std::vector<double> energies(np);
  DeResult result;

  std::size_t best = 0;
  for (std::size_t i = 0; i < np; ++i) {
    energies[i] = safe_eval(objective, population.row(i));
    if (energies[i] < energies[best]) best = i;
  }
  result.evaluations = np;
  result.best_history.push_back(energies[best]);

  std::vector<double> trial(dims);
  std::vector<std::size_t> pool(np - 1);
  for (std::size_t gen = 0; gen < config.max_iter; ++gen) {
    const double f = rng.uniform(config.f_low, config.f_high);
    for (std::size_t i = 0; i < np; ++i) {
      // Two distinct partners other than i, drawn without replacement.
      std::size_t fill = 0;
      for (std::size_t j = 0; j < np; ++j) {
        if (j != i) pool[fill++] = j;
      }
      const std::size_t a = rng.index(np - 1);
      std::swap(pool[0], pool[a]);
      const std::size_t b = 1 + rng.index(np - 2);
      const std::size_t r1 = pool[0];
      const std::size_t r2 = pool[b];

      const auto target = population.row(i);
      const auto xb = population.row(best);
      const auto x1 = population.row(r1);
      const auto x2 = population.row(r2);
      const std::size_t forced = rng.index(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        const bool cross = d == forced || rng.uniform() < config.cr;
        double v = cross ? xb[d] + f * (x1[d] - x2[d]) : target[d];
        if (v < bounds.lower()[d] || v > bounds.upper()[d]) {
          v = rng.uniform(bounds.lower()[d], bounds.upper()[d]);
        }
        trial[d] = v;
      }

      const double energy = safe_eval(objective, trial);
      ++result.evaluations;
      if (energy <= energies[i]) {
        std::copy(trial.begin(), trial.end(), population.row(i).begin());
        energies[i] = energy;
        if (energy < energies[best]) best = i;
      }
    }
    result.best_history.push_back(energies[best]);
    result.generations = gen + 1;
    if (converged(energies, config)) break;
  }

  const auto bx = population.row(best);
  result.best_x.assign(bx.begin(), bx.end());
  result.best_value = energies[best];
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string_view to_string(InitMethod method) { return method == InitMethod::Hds ? "hds" : "sobol"; }

std::optional<InitMethod> parse_method(std::string_view name) {
  if (name == "hds" || name == "HDS") return InitMethod::Hds;
  if (name == "sobol" || name == "Sobol") return InitMethod::Sobol;
  return std::nullopt;
}

SampleMatrix make_init_population(InitMethod method, std::size_t n, const Bounds& bounds,
                                  std::uint64_t seed) {
  if (n < 1) throw ConfigError("init population: n must be >= 1");
  if (method == InitMethod::Sobol) {
    SobolEngine engine(bounds.dims());
    engine.skip(1);
    return denormalize(engine.draw(n), bounds);
  }
  HdsConfig config;
  config.n_samples = n;
  config.dims = bounds.dims();
  config.bounds = bounds;
  config.seed = seed;
  config.normalize = false;
  return hds_generate(config);
}

}  // namespace hds
