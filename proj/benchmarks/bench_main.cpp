#include <benchmark/benchmark.h>

#include "kostlan/energy.hpp"
#include "kostlan/minimizer.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/roots.hpp"

namespace {

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = kostlan::sample_elliptic(n, 7, 0);
  kostlan::cplx z(0.3, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evaluate(z));
    z *= kostlan::cplx(0.9999, 0.0001);
  }
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(16, 4096);

void BM_FindRoots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const auto p = kostlan::sample_elliptic(n, 11, i++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(kostlan::find_roots(p));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FindRoots)->RangeMultiplier(2)->Range(32, 1024)->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

void BM_PairwiseEnergy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kostlan::ComplexGaussianStream s(5, 0);
  const auto cfg = kostlan::sample_uniform_configuration(n, s);
  for (auto _ : state) benchmark::DoNotOptimize(kostlan::pairwise_energy(cfg));
  state.SetComplexityN(n);
}
BENCHMARK(BM_PairwiseEnergy)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void BM_Gradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kostlan::ComplexGaussianStream s(9, 0);
  const auto cfg = kostlan::sample_uniform_configuration(n, s);
  for (auto _ : state) benchmark::DoNotOptimize(kostlan::energy_gradient(cfg));
}
BENCHMARK(BM_Gradient)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
