#include <benchmark/benchmark.h>

#include "dispersion/certificate.hpp"
#include "dispersion/constructions.hpp"

namespace {

using namespace dispersion;

// Random grid sample of n points; args: q, d, n.
void BM_CertificateCheck(benchmark::State& state) {
  GridParams p;
  p.q = static_cast<std::uint64_t>(state.range(0));
  p.d = static_cast<std::size_t>(state.range(1));
  p.n = static_cast<std::uint64_t>(state.range(2));
  p.seed = 3;
  const PointSet x = random_grid_set(p);
  for (auto _ : state) benchmark::DoNotOptimize(certificate_check(x, p.q));
  state.counters["family"] = covering_family_size(p.q, p.d).get_d();
}
BENCHMARK(BM_CertificateCheck)->Args({4, 2, 64})->Args({4, 8, 2000})->Args({4, 16, 20000})->Args({5, 10, 20000})
    ->Unit(benchmark::kMillisecond);

void BM_PatternStream(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t c = 0;
    for (PatternEnumerator e(4, static_cast<std::uint64_t>(state.range(0))); !e.done(); e.advance()) ++c;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_PatternStream)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MinimalCertifiedN(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_certified_n(4, static_cast<std::uint64_t>(state.range(0)), ++seed, 10'000'000));
  }
}
BENCHMARK(BM_MinimalCertifiedN)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PaperSampleSize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(paper_sample_size(4, 1000000));
}
BENCHMARK(BM_PaperSampleSize);

void BM_UnionBound(benchmark::State& state) {
  const mpz_class n = paper_sample_size(4, 1000000);
  for (auto _ : state) benchmark::DoNotOptimize(union_bound_check(4, 1000000, n));
}
BENCHMARK(BM_UnionBound);

}  // namespace
