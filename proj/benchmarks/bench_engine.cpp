#include <benchmark/benchmark.h>

#include "dispersion/constructions.hpp"
#include "dispersion/engine.hpp"

namespace {

using namespace dispersion;

// Diagonal set for r = 1/4 + 1/k in dimension d; args: k, d.
void BM_ExactDiagonal(benchmark::State& state) {
  const Scalar r = Scalar(1, 4) + Scalar(1, state.range(0));
  const PointSet x = diagonal_set(DiagonalParams(r, static_cast<std::size_t>(state.range(1))));
  EngineOptions opt;
  opt.budget = UINT64_MAX;
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_exact(x, opt));
  state.counters["points"] = static_cast<double>(x.size());
  state.counters["examined"] = static_cast<double>(dispersion_exact(x, opt).stats.candidates_examined);
}
BENCHMARK(BM_ExactDiagonal)->Args({6, 2})->Args({20, 2})->Args({100, 2})->Args({6, 3})->Args({20, 3})->Args({6, 4})
    ->Unit(benchmark::kMillisecond);

// Uniform random sets; args: n, d.
void BM_ExactUniform(benchmark::State& state) {
  const PointSet x = baseline_set(BaselineKind::UniformRandom, static_cast<std::size_t>(state.range(0)),
                                  static_cast<std::size_t>(state.range(1)), 1);
  EngineOptions opt;
  opt.budget = UINT64_MAX;
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_exact(x, opt));
}
BENCHMARK(BM_ExactUniform)->Args({64, 2})->Args({256, 2})->Args({16, 3})->Args({32, 3})->Args({8, 4})
    ->Unit(benchmark::kMillisecond);

void BM_NaiveUniform(benchmark::State& state) {
  const PointSet x = baseline_set(BaselineKind::UniformRandom, static_cast<std::size_t>(state.range(0)),
                                  static_cast<std::size_t>(state.range(1)), 1);
  EngineOptions opt;
  opt.prune = false;
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_exact(x, opt));
}
BENCHMARK(BM_NaiveUniform)->Args({8, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

void BM_LowerWitness(benchmark::State& state) {
  const PointSet x = baseline_set(BaselineKind::UniformRandom, 64, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_lower_witness(x, static_cast<std::uint64_t>(state.range(0)), 7));
}
BENCHMARK(BM_LowerWitness)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
