// Serial reference kernels against their OpenMP counterparts. Both variants
// produce identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include "dstable/citations.hpp"
#include "dstable/stability.hpp"

using namespace dstable;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_StabilityResidual(benchmark::State& state) {
  const Grid grid = uniform_grid(0.0, 0.9999, 200001);
  const Example2 family{1.0, 0.5, 0.3};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        discrete_stability_residual(family, Example2Thin{0.3}, 7, 1.0 / 49.0, grid, exec_of(state)));
  label(state);
}

void BM_ExtractPmf(benchmark::State& state) {
  const FieldCitations family{1.0, 0.5, 0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_pmf(family, 500, {.radius = 0.98, .tolerance = 1e-6, .exec = exec_of(state)}));
  label(state);
}

void BM_FieldTotals(benchmark::State& state) {
  const FieldSim cfg{1.0, 0.5, 0.5, Seed{1, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(sample_field_totals(cfg, 200000, exec_of(state)));
  label(state);
}

void BM_Authors(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_authors(0.5, 0.5, Seed{2, 0}, 1000000, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_StabilityResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractPmf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FieldTotals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Authors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
