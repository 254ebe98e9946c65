#include <benchmark/benchmark.h>

#include <numbers>

#include "airyflow/airy.hpp"
#include "airyflow/bvp.hpp"
#include "airyflow/field.hpp"
#include "airyflow/verify.hpp"

using namespace airyflow;

namespace {

const FlowParams kParams{1.0, -1.2, 0.3, 1.5};
const SolutionConstants kSolution = solve_ivp(InitialData{0.4, -0.3, std::nullopt}, kParams);

// Range(0) picks the branch: series, table continuation, asymptotic.
void BM_AiryEval(benchmark::State& state) {
  const double t0 = state.range(0) == 0 ? -0.9 : state.range(0) == 1 ? -11.0 : -40.0;
  double t = t0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(airy_eval(t));
    t = t < t0 + 1.0 ? t + 1e-3 : t0;
  }
}
BENCHMARK(BM_AiryEval)->DenseRange(0, 2);

void BM_ExactU1(benchmark::State& state) {
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_u1(s, kParams, kSolution));
    s = s < 1.5 ? s + 1e-4 : 0.0;
  }
}
BENCHMARK(BM_ExactU1);

void BM_SolveBvp(benchmark::State& state) {
  const double u1L = exact_u1(kParams.length, kParams, kSolution);
  for (auto _ : state) benchmark::DoNotOptimize(solve_bvp(0.4, u1L, kParams, default_c_bracket(0.4, u1L, kParams)));
}
BENCHMARK(BM_SolveBvp)->Unit(benchmark::kMillisecond);

void BM_IntegrateRiccati(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate_riccati(kParams, kSolution.c, 0.4, 1.5, 1e-4));
}
BENCHMARK(BM_IntegrateRiccati)->Unit(benchmark::kMillisecond);

void BM_ReconstructField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec grid{0.0, 1.5, -0.5, 0.5, n, n};
  const auto family = StreamlineFamily::sinusoidal(0.1, std::numbers::pi);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_field(family, kParams, kSolution, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}
BENCHMARK(BM_ReconstructField)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
