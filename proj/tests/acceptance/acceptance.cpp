// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
// Pass a list of criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "helpers.hpp"
#include "hds/de.hpp"
#include "hds/discrepancy.hpp"
#include "hds/ellipsoid.hpp"
#include "hds/experiment.hpp"
#include "hds/functions.hpp"
#include "hds/generator.hpp"
#include "hds/io.hpp"
#include "hds/rng.hpp"
#include "hds/sobol.hpp"
#include "hds/special.hpp"
#include "hds/stats.hpp"
#include "oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

hds::SampleMatrix generate(std::size_t n, std::size_t d, std::uint64_t seed, bool normalize = true) {
  hds::HdsConfig cfg;
  cfg.n_samples = n;
  cfg.dims = d;
  cfg.seed = seed;
  cfg.normalize = normalize;
  return hds::hds_generate(cfg);
}

Outcome pipeline_invariants() {
  const auto start = Clock::now();
  std::size_t cases = 0;
  for (std::size_t n : {1u, 64u, 1000u}) {
    for (std::size_t d : {1u, 2u, 10u, 50u}) {
      for (std::uint64_t seed : {0u, 1u}) {
        hds::HdsConfig cfg;
        cfg.n_samples = n;
        cfg.dims = d;
        cfg.seed = seed;
        cfg.bounds = hds::Bounds::uniform(d, -100.0, 100.0);
        const auto a = hds::hds_generate(cfg);
        const auto b = hds::hds_generate(cfg);
        if (a.rows() != n || a.cols() != d) return {false, fmt("shape %zux%zu for N=%zu D=%zu", a.rows(), a.cols(), n, d)};
        if (!(a == b)) return {false, fmt("not deterministic for N=%zu D=%zu seed=%d", n, d, int(seed))};
        for (std::size_t i = 0; i < n; ++i) {
          if (!cfg.bounds->contains(a.row(i))) return {false, fmt("point outside bounds N=%zu D=%zu", n, d)};
        }
        ++cases;
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {elapsed < 60.0, fmt("%zu configurations, %.1fs (limit 60s)", cases, elapsed)};
}

Outcome discrepancy_ordering() {
  const auto start = Clock::now();
  std::string detail;
  bool pass = true;
  for (std::size_t n : {100u, 1000u}) {
    hds::SobolEngine engine(100);
    engine.skip(1);
    const auto sobol = engine.draw(n);
    const double sobol_cl2 = hds::centered_l2(sobol);
    const double sobol_l2s = hds::l2_star(sobol);
    int cl2_wins = 0;
    int l2s_wins = 0;
    double hds_cl2 = 0.0;
    double hds_l2s = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto h = generate(n, 100, seed);
      const double c = hds::centered_l2(h);
      const double s = hds::l2_star(h);
      hds_cl2 += c / 10.0;
      hds_l2s += s / 10.0;
      cl2_wins += c < sobol_cl2;
      l2s_wins += s > sobol_l2s;
    }
    pass &= cl2_wins >= 9 && l2s_wins >= 9;
    detail += fmt("N=%zu CL2 hds=%.3g sobol=%.3g (%d/10), L2* hds=%.3g sobol=%.3g (%d/10); ", n, hds_cl2, sobol_cl2,
                  cl2_wins, hds_l2s, sobol_l2s, l2s_wins);
  }
  const double elapsed = seconds_since(start);
  pass &= elapsed < 300.0;
  return {pass, detail + fmt("%.1fs (limit 300s)", elapsed)};
}

Outcome discrepancy_correctness() {
  hds::RngStream rng(2024, "acceptance-discrepancy");
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.index(256);
    const std::size_t d = 1 + rng.index(10);
    hds::SampleMatrix m(n, d);
    for (double& v : m.values()) v = rng.uniform();
    const auto rows = testing_support::to_rows(m);
    worst = std::max(worst, std::abs(hds::l2_star(m) - oracle::l2_star(rows)));
    worst = std::max(worst, std::abs(hds::centered_l2(m) - oracle::centered_l2(rows)));
  }
  return {worst <= 1e-10, fmt("50 matrices, max |diff| = %.2e (limit 1e-10)", worst)};
}

Outcome chi2_round_trip() {
  double worst = 0.0;
  for (double k : {1.0, 2.0, 10.0, 100.0, 1000.0}) {
    for (double alpha : {0.01, 0.5, 0.9999}) {
      worst = std::max(worst, std::abs(hds::chi2_cdf(hds::chi2_quantile(alpha, k), k) - alpha));
    }
  }
  return {worst <= 1e-8, fmt("max |cdf(quantile(a)) - a| = %.2e (limit 1e-8)", worst)};
}

Outcome radial_uniformity() {
  hds::EllipsoidModel model;
  model.center = {0.0, 0.0};
  model.rotation = {1.0, 0.0, 0.0, 1.0};
  model.semi_axes = {1.0, 1.0};
  hds::SobolEngine radial(1);
  hds::RngStream rng(5, "acceptance-radial");
  const auto pts = hds::sample_ellipsoid(model, 4096, 1.0, radial, rng);
  std::vector<double> r2;
  for (std::size_t i = 0; i < pts.rows(); ++i) r2.push_back(pts(i, 0) * pts(i, 0) + pts(i, 1) * pts(i, 1));
  const double p = oracle::ks_uniform_pvalue(r2);
  return {p > 0.01, fmt("KS p = %.3f for (r/lambda)^2, n=4096 (need > 0.01)", p)};
}

double mean_marginal_kurtosis(const hds::SampleMatrix& m) {
  double total = 0.0;
  std::vector<double> col(m.rows());
  for (std::size_t d = 0; d < m.cols(); ++d) {
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, d);
    total += oracle::excess_kurtosis(col);
  }
  return total / static_cast<double>(m.cols());
}

Outcome marginal_shape() {
  int wins = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double k2_sum = 0.0;
  double k100_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double k2 = mean_marginal_kurtosis(generate(10000, 2, seed));
    const double k100 = mean_marginal_kurtosis(generate(10000, 100, seed));
    k2_sum += k2;
    k100_sum += k100;
    min_margin = std::min(min_margin, k100 - k2);
    wins += k100 > k2;
  }
  return {wins == 10 && min_margin > 0.0,
          fmt("mean excess kurtosis D=2 %.3f, D=100 %.3f; D=100 higher in %d/10 seeds, min margin %.3f", k2_sum / 10,
              k100_sum / 10, wins, min_margin)};
}

Outcome de_sanity() {
  const auto bounds = hds::Bounds::uniform(5, -100.0, 100.0);
  auto sphere = [](std::span<const double> x) { return hds::evaluate_function(hds::FunctionId::Sphere, x); };
  std::string detail;
  bool pass = true;
  for (auto method : {hds::InitMethod::Hds, hds::InitMethod::Sobol}) {
    int solved = 0;
    bool monotone = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      hds::DeConfig cfg;
      cfg.seed = seed;
      const auto res =
          hds::differential_evolution(sphere, bounds, hds::make_init_population(method, 64, bounds, seed), cfg);
      solved += res.best_value < 1e-3;
      for (std::size_t g = 1; g < res.best_history.size(); ++g) monotone &= res.best_history[g] <= res.best_history[g - 1];
    }
    pass &= solved >= 18 && monotone;
    detail += fmt("%s init: %d/20 below 1e-3, trajectories %s; ", std::string(hds::to_string(method)).c_str(), solved,
                  monotone ? "non-increasing" : "NOT monotone");
  }
  return {pass, detail};
}

Outcome table_reproduction() {
  const auto start = Clock::now();
  hds::ExperimentPlan plan;
  plan.functions = hds::shifted_functions();
  plan.dims = {10, 30};
  plan.sizes = {64, 1000};
  plan.trials = 15;
  plan.de.max_iter = 100;
  const auto records = hds::run_experiment(plan);

  // Pairing integrity: every key appears exactly once per method.
  std::set<std::tuple<std::string, std::size_t, std::size_t, std::uint64_t>> hds_keys;
  std::set<std::tuple<std::string, std::size_t, std::size_t, std::uint64_t>> sobol_keys;
  for (const auto& r : records) {
    auto& keys = r.method == hds::InitMethod::Hds ? hds_keys : sobol_keys;
    if (!keys.insert({r.function, r.dims, r.n, r.trial}).second) return {false, "duplicate record"};
  }
  const std::size_t expected = plan.functions.size() * plan.dims.size() * plan.sizes.size() * plan.trials;
  if (hds_keys != sobol_keys || hds_keys.size() != expected) return {false, "records are not fully paired"};

  const auto summaries = hds::summarize(records);
  std::printf("%s", hds::report_table(summaries).c_str());
  bool any_better = false;
  bool finite = summaries.size() == 4;
  for (const auto& s : summaries) {
    any_better |= s.ratio > 1.0;
    finite &= std::isfinite(s.ratio) && std::isfinite(s.p_value) && std::isfinite(s.ci95_low) &&
              std::isfinite(s.ci95_high) && s.trials == plan.trials && s.functions == plan.functions.size();
  }
  const double elapsed = seconds_since(start);
  return {finite && any_better && elapsed < 1800.0,
          fmt("%zu functions, %zu paired records, %zu cells, ratio > 1 in some cell: %s, %.0fs (limit 1800s)",
              plan.functions.size(), records.size(), summaries.size(), any_better ? "yes" : "no", elapsed)};
}

Outcome allocation_conservation() {
  hds::RngStream rng(77, "acceptance-allocation");
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::size_t> counts(1 + rng.index(20));
    for (auto& c : counts) c = rng.index(rng.uniform() < 0.5 ? 5 : 5000);
    counts[rng.index(counts.size())] += 1;
    const std::size_t n = 1 + rng.index(rng.uniform() < 0.5 ? 10 : 100000);
    const auto out = hds::allocate_samples(counts, n);
    if (out.size() != counts.size()) return {false, fmt("instance %d: wrong length", t)};
    if (std::accumulate(out.begin(), out.end(), std::size_t{0}) != n) return {false, fmt("instance %d: sum != N", t)};
  }
  return {true, "10000 random instances, sum exact and all counts >= 0"};
}

double timed_generation(std::size_t n, std::size_t d) {
  std::vector<double> runs;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto start = Clock::now();
    generate(n, d, seed);
    runs.push_back(seconds_since(start));
  }
  std::sort(runs.begin(), runs.end());
  return runs[1];
}

Outcome generation_scaling() {
  std::string detail = "median seconds, N=1000 over D{10,50,100}:";
  bool pass = true;
  double prev = 0.0;
  for (std::size_t d : {10u, 50u, 100u}) {
    const double t = timed_generation(1000, d);
    pass &= t >= prev / 2.0;
    prev = t;
    detail += fmt(" %.3f", t);
  }
  detail += "; D=10 over N{1e3,1e4,1e5}:";
  prev = 0.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const double t = timed_generation(n, 10);
    pass &= t >= prev / 2.0;
    prev = t;
    detail += fmt(" %.3f", t);
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pipeline invariants", pipeline_invariants},
      {"discrepancy ordering at D=100", discrepancy_ordering},
      {"discrepancy matches naive oracle", discrepancy_correctness},
      {"chi-square quantile round trip", chi2_round_trip},
      {"radial uniformity in 2D", radial_uniformity},
      {"marginal kurtosis grows with D", marginal_shape},
      {"DE sanity on sphere", de_sanity},
      {"paired benchmark report", table_reproduction},
      {"allocation conservation", allocation_conservation},
      {"generation time scaling", generation_scaling},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", id, criteria[i].first, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
