#include <benchmark/benchmark.h>

#include "calogero/oracle.hpp"

using namespace calogero;

static void BM_ShootSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shoot_spectrum({0.1, 1.0}, ExtensionLabel::nu(0.5), n));
}
BENCHMARK(BM_ShootSpectrum)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_WronskianMismatch(benchmark::State& state) {
  const ShootingConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wronskian_mismatch({0.75, 1.0}, ExtensionLabel::unique(), 4.3, cfg));
  }
}
BENCHMARK(BM_WronskianMismatch)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
