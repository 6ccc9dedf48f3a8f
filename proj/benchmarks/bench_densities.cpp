#include <qfim/densities.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace qfim;

void BM_NumericFourier(benchmark::State& state) {
  const auto d = alpha_z_tent_density(RenyiParams(0.3, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(numeric_fourier(d, 1.5));
}
BENCHMARK(BM_NumericFourier);

void BM_ConvolvedTent(benchmark::State& state) {
  const RenyiParams p(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(convolved_tent(0.8, p));
}
BENCHMARK(BM_ConvolvedTent);

void BM_CharFn(benchmark::State& state) {
  const RenyiParams p(0.3, 1.7);
  double w = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_fn_alpha_z(w, p));
    w += 1e-9;
  }
}
BENCHMARK(BM_CharFn);

}  // namespace
