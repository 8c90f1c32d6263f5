#include <benchmark/benchmark.h>

#include "cwgng/cwgng.hpp"

using cwgng::ModelParams;

namespace {

const ModelParams kSmallField = ModelParams::make(2.9, 0.15);

}  // namespace

static void BM_ConditionedCost(benchmark::State& state) {
  const cwgng::ConditionedCost cost(kSmallField, 0.3, -0.2);
  double m = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost(m));
    m = m > 0.98 ? -0.99 : m + 1e-3;
  }
  state.SetItemsProcessed(state.iterations());
}

static void BM_SolverConstruction(benchmark::State& state) {
  const int intervals = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::StationarySolver(kSmallField, intervals));
}

static void BM_GlobalMinimizers(benchmark::State& state) {
  const cwgng::StationarySolver solver(kSmallField);
  for (auto _ : state) benchmark::DoNotOptimize(solver.minimizers(0.2, -0.25));
}

static void BM_TangencyBounds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::tangency_bounds(kSmallField));
}

static void BM_Scenario(benchmark::State& state) {
  const cwgng::StationarySolver solver(kSmallField);
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::scenario(solver, -0.2));
}

static void BM_BadSet(benchmark::State& state) {
  const cwgng::StationarySolver solver(kSmallField);
  cwgng::BadSetOptions opt;
  opt.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::bad_set(solver, 0.2, opt));
}

static void BM_PathDp(benchmark::State& state) {
  cwgng::PathGrid g;
  g.time_steps = static_cast<int>(state.range(0));
  g.mag_levels = static_cast<int>(state.range(0));
  g.t = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::path_dp(ModelParams::make(1.6, 0.0), g));
  state.SetComplexityN(state.range(0));
}

static void BM_McSpecKernel(benchmark::State& state) {
  cwgng::MCConfig cfg;
  cfg.N = 200;
  cfg.replicas = 20000;
  cfg.jobs = static_cast<int>(state.range(0));
  const ModelParams p = ModelParams::make(1.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(cwgng::mc_spec_kernel(cfg, p, 0.5, 0.3));
  state.SetItemsProcessed(state.iterations() * cfg.replicas);
}

BENCHMARK(BM_ConditionedCost);
BENCHMARK(BM_SolverConstruction)->Arg(1024)->Arg(4096);
BENCHMARK(BM_GlobalMinimizers);
BENCHMARK(BM_TangencyBounds)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scenario)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BadSet)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathDp)->RangeMultiplier(2)->Range(50, 200)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_McSpecKernel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
