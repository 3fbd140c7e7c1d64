#include <benchmark/benchmark.h>

#include "hds/de.hpp"
#include "hds/discrepancy.hpp"
#include "hds/functions.hpp"
#include "hds/generator.hpp"
#include "hds/kmeans.hpp"
#include "hds/neighbors.hpp"
#include "hds/sobol.hpp"
#include "hds/special.hpp"

namespace {

void BM_SobolDraw(benchmark::State& state) {
  const auto dims = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    hds::SobolEngine engine(dims);
    benchmark::DoNotOptimize(engine.draw(4096));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_SobolDraw)->Arg(2)->Arg(10)->Arg(100)->Arg(1000);

void BM_Chi2Quantile(benchmark::State& state) {
  const auto dof = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hds::chi2_quantile(0.9999, dof));
}
BENCHMARK(BM_Chi2Quantile)->Arg(10)->Arg(1000);

void BM_MiniBatchKMeans(benchmark::State& state) {
  const auto dims = static_cast<std::size_t>(state.range(0));
  hds::SobolEngine engine(dims);
  const auto points = engine.draw(hds::initial_sample_count(dims));
  for (auto _ : state) {
    hds::RngStream rng(1);
    benchmark::DoNotOptimize(hds::minibatch_kmeans(points, hds::initial_cluster_count(dims), rng));
  }
}
BENCHMARK(BM_MiniBatchKMeans)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MeanKnn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  hds::SobolEngine engine(10);
  engine.skip(1);
  const auto points = engine.draw(n);
  const std::size_t limit = state.range(1) ? n + 1 : 0;
  for (auto _ : state) benchmark::DoNotOptimize(hds::mean_knn_distance(points, 8, limit));
}
BENCHMARK(BM_MeanKnn)->Args({5000, 1})->Args({5000, 0})->Args({20000, 0})->Unit(benchmark::kMillisecond);

void BM_HdsGenerate(benchmark::State& state) {
  hds::HdsConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  cfg.dims = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hds::hds_generate(cfg));
}
BENCHMARK(BM_HdsGenerate)
    ->Args({1000, 10})
    ->Args({1000, 50})
    ->Args({1000, 100})
    ->Args({10000, 10})
    ->Unit(benchmark::kMillisecond);

void BM_Discrepancy(benchmark::State& state) {
  hds::SobolEngine engine(100);
  engine.skip(1);
  const auto points = engine.draw(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hds::l2_star(points));
    benchmark::DoNotOptimize(hds::centered_l2(points));
  }
}
BENCHMARK(BM_Discrepancy)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DifferentialEvolution(benchmark::State& state) {
  const auto dims = static_cast<std::size_t>(state.range(0));
  const hds::BenchmarkFunction f(hds::FunctionId::ShiftedRotatedRastrigin, dims);
  const auto bounds = f.bounds();
  const auto pop = hds::make_init_population(hds::InitMethod::Sobol, 64, bounds, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hds::differential_evolution([&](std::span<const double> x) { return f(x); }, bounds, pop, {}));
  }
}
BENCHMARK(BM_DifferentialEvolution)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
