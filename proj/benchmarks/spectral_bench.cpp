#include <benchmark/benchmark.h>

#include "calogero/factorization.hpp"
#include "calogero/spectral.hpp"

using namespace calogero;

static void BM_SpectrumNu(benchmark::State& state) {
  const auto rp = from_reduced(0.3, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(rp, ExtensionLabel::nu(0.4), n));
}
BENCHMARK(BM_SpectrumNu)->Arg(5)->Arg(50);

static void BM_SpectrumKappaZero(benchmark::State& state) {
  const auto rp = from_reduced(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(rp, ExtensionLabel::nu(-0.7), 5));
}
BENCHMARK(BM_SpectrumKappaZero);

static void BM_SolveW(benchmark::State& state) {
  const auto rp = from_reduced(0.6, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_w(0.4, 0.9, rp));
}
BENCHMARK(BM_SolveW);

static void BM_PhiJet(benchmark::State& state) {
  const auto rp = reduce({0.2, 1.0});
  const auto phi = make_phi({0.5, 0.3, rp});
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi.jet(x));
    x = x < 5.0 ? x + 0.37 : 0.05;
  }
}
BENCHMARK(BM_PhiJet);

BENCHMARK_MAIN();
