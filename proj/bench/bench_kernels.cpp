#include <benchmark/benchmark.h>

#include "prefdist/elicitation.hpp"
#include "prefdist/partial_distance.hpp"
#include "prefdist/sampling.hpp"

using namespace prefdist;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_CompleteDistance(benchmark::State& state) {
  const std::size_t n = 97;
  Rng r(7);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<double>(i) / (n - 1);
    b[i] = a[i] * a[i];
  }
  const UtilityVector u1(a), u2(b);
  for (auto _ : state) benchmark::DoNotOptimize(mc_distance_complete(u1, u2, 200000, r, exec_of(state)));
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_CompleteDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PartialDistance(benchmark::State& state) {
  const OutcomeSpace space(Grid{0, 12, 0.5});
  const ReducedPolytope vacuous = reduce(base_system(space));
  EstimatorConfig cfg;
  cfg.outer_samples = 64;
  cfg.inner_samples = 500;
  cfg.walk_steps = 200;
  cfg.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_partial_distance(vacuous, vacuous, cfg, exec_of(state)));
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_PartialDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
