#include <benchmark/benchmark.h>

#include "calogero/specfun.hpp"

namespace sf = calogero::specfun;

static void BM_Gamma(benchmark::State& state) {
  double z = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::gamma(z));
    z = z < 30.0 ? z + 0.731 : 0.37;
  }
}
BENCHMARK(BM_Gamma);

static void BM_Digamma(benchmark::State& state) {
  double z = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::digamma(z));
    z = z < 30.0 ? z + 0.731 : 0.37;
  }
}
BENCHMARK(BM_Digamma);

static void BM_GammaRatioLarge(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::gamma_ratio(1e8 + 0.3, 1e8 - 0.2));
}
BENCHMARK(BM_GammaRatioLarge);

static void BM_KummerPhi(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::kummer_phi(0.8, 1.5, rho));
}
BENCHMARK(BM_KummerPhi)->Arg(1)->Arg(10)->Arg(50);

static void BM_TricomiPsi(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::tricomi_psi(0.8, 1.5, rho));
}
BENCHMARK(BM_TricomiPsi)->Arg(1)->Arg(10)->Arg(50);

static void BM_TricomiPsiIntegerBeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::tricomi_psi(0.8, 2.0, 3.0));
}
BENCHMARK(BM_TricomiPsiIntegerBeta);

BENCHMARK_MAIN();
