#include <benchmark/benchmark.h>

#include <random>
#include <type_traits>

#include "parafoil/batch.hpp"
#include "parafoil/scenario_io.hpp"
#include "parafoil/spatial_index.hpp"

using namespace parafoil;

namespace {

Scenario sample() {
  Scenario s;
  s.initial = {-1500, 500, 1000, 0};
  s.params = {19.2, 3.0, 9.81};
  s.wind = {-3, -3, 0};
  s.bounds = {-1500, 1500, -1500, 1500, 0, 1000};
  s.obstacles.push_back({{-200, 200, -200, 200, 150, 300}, "band"});
  s.goal.box = {-200, 200, -200, 200, 0, 5};
  return s;
}

void run_batch(benchmark::State& state, Execution execution) {
  const Scenario sc = sample();
  PlannerConfig cfg;
  cfg.time_budget = 0;
  cfg.max_iterations = static_cast<std::uint64_t>(state.range(0));
  const auto seeds = seed_range(1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(run_seeds(sc, cfg, seeds, execution));
  state.counters["workers"] = execution == Execution::parallel ? parallel_workers() : 1;
}

void BM_BatchSerial(benchmark::State& state) { run_batch(state, Execution::serial); }
void BM_BatchParallel(benchmark::State& state) { run_batch(state, Execution::parallel); }
BENCHMARK(BM_BatchSerial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(5000)->Unit(benchmark::kMillisecond);

template <class Index>
void BM_Nearest(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xy(-1500, 1500), h(0, 1000);
  Index index = [] {
    if constexpr (std::is_same_v<Index, GridIndex>)
      return GridIndex(120.0);
    else
      return Index();
  }();
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(state.range(0)); ++i) index.insert(i, {xy(rng), xy(rng), h(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(index.nearest({xy(rng), xy(rng), h(rng)}));
}
BENCHMARK_TEMPLATE(BM_Nearest, GridIndex)->Arg(1000)->Arg(20000);
BENCHMARK_TEMPLATE(BM_Nearest, BruteForceIndex)->Arg(1000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
