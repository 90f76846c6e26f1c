#include <benchmark/benchmark.h>

#include "blockade/amplitude.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"
#include "blockade/optimize.hpp"

namespace {

using namespace blockade;

SystemParams weak_point() {
  SystemParams p = weak_params();
  p.delta = 7.3e-5;
  p.lambda_gain = 0.93e-6;
  return p;
}

void BM_SteadyAmplitudes(benchmark::State& state) {
  const SystemParams p = weak_point();
  for (auto _ : state) benchmark::DoNotOptimize(steady_amplitudes(p));
}
BENCHMARK(BM_SteadyAmplitudes);

void BM_Liouvillian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemParams p = weak_point();
  const FockBasis b(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian(p, b));
}
BENCHMARK(BM_Liouvillian)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_SteadyState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Superoperator l = liouvillian(weak_point(), FockBasis(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_SteadyState)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SolveMasterEquation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemParams p = weak_point();
  for (auto _ : state) benchmark::DoNotOptimize(solve_master_equation(p, n));
}
BENCHMARK(BM_SolveMasterEquation)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FindOptimalPairs(benchmark::State& state) {
  const SystemParams p = strong_params();
  RootSearchOptions opts;
  opts.g2_cutoff = 0;
  opts.compare_printed_formula = false;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_optimal_pairs(p, Cavity::first, default_grid(Regime::strong), opts));
  }
}
BENCHMARK(BM_FindOptimalPairs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
