#include "anyon/rdm.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace anyon;

namespace {

const WavefnEvaluator& evaluator(bool hardcore) {
  static const WavefnEvaluator finite(solve_ground_state({4, 1.0, 10.0, 0.5}));
  static const WavefnEvaluator hc(solve_ground_state({4, 1.0, kInfinity, 0.5}));
  return hardcore ? hc : finite;
}

void BM_RdmSerial(benchmark::State& state) {
  const auto& ev = evaluator(state.range(1));
  const auto grid = build_grid(static_cast<int>(state.range(0)), 4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_rdm_serial(ev, grid, InnerSpec{}));
  state.counters["entries"] = static_cast<double>(grid.size() * (grid.size() + 1) / 2);
}

void BM_RdmOpenMP(benchmark::State& state) {
  const auto& ev = evaluator(state.range(1));
  const auto grid = build_grid(static_cast<int>(state.range(0)), 4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_rdm(ev, grid, InnerSpec{}));
  state.counters["entries"] = static_cast<double>(grid.size() * (grid.size() + 1) / 2);
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_RdmSerial)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RdmOpenMP)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
