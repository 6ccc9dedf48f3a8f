#include <qfim/families.hpp>
#include <qfim/infomat.hpp>
#include <qfim/structured.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qfim;

// d = range(0), L = 3 parameters throughout.
void BM_InfoSpectral(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto fam = random_thermal_family(state.range(0), 3, rng);
  const RealVector theta = random_parameters(3, rng);
  const auto kernel = ZetaKernel::alpha_z(RenyiParams(0.5, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(info_spectral(*fam, theta, kernel));
}
BENCHMARK(BM_InfoSpectral)->Arg(2)->Arg(4)->Arg(8);

void BM_InfoThermalClosed(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto fam = random_thermal_family(state.range(0), 3, rng);
  const RealVector theta = random_parameters(3, rng);
  const RenyiParams p(0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(thermal_info_closed(*fam, theta, p));
}
BENCHMARK(BM_InfoThermalClosed)->Arg(2)->Arg(4)->Arg(8);

void BM_InfoHessianOracle(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto fam = random_thermal_family(state.range(0), 3, rng);
  const RealVector theta = random_parameters(3, rng);
  const auto spec = DivergenceSpec::alpha_z(RenyiParams(0.5, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(info_hessian_oracle(*fam, theta, spec));
}
BENCHMARK(BM_InfoHessianOracle)->Arg(2)->Arg(4);

void BM_InfoKuboMoriIntegral(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto fam = random_thermal_family(state.range(0), 3, rng);
  const RealVector theta = random_parameters(3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(info_kubo_mori(*fam, theta, KuboMoriPath::resolvent_integral));
}
BENCHMARK(BM_InfoKuboMoriIntegral)->Arg(2)->Arg(4);

}  // namespace
