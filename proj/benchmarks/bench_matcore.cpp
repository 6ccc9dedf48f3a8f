#include <qfim/families.hpp>
#include <qfim/matcore.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qfim;

struct Setup {
  SpectralDecomposition s;
  HermitianOperator da;
};

Setup make_setup(Index d) {
  std::mt19937_64 rng(7);
  const auto h = random_gue(d, rng);
  const auto rho = gibbs_state(HermitianOperator(0.5 * h.matrix(), HermitianPolicy::symmetrize));
  return {eig_hermitian(rho), random_gue(d, rng)};
}

void BM_EigHermitian(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto h = random_gue(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_LogDerivativeDaleckii(benchmark::State& state) {
  const auto st = make_setup(state.range(0));
  const auto f = functions::log();
  for (auto _ : state) benchmark::DoNotOptimize(matrix_derivative(st.s, st.da, f));
}
BENCHMARK(BM_LogDerivativeDaleckii)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_LogDerivativeQuadrature(benchmark::State& state) {
  const auto st = make_setup(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_derivative_quadrature(st.s, st.da));
}
BENCHMARK(BM_LogDerivativeQuadrature)->Arg(2)->Arg(4)->Arg(8);

void BM_PowerDerivativeQuadrature(benchmark::State& state) {
  const auto st = make_setup(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_derivative_quadrature(st.s, st.da, 0.5));
}
BENCHMARK(BM_PowerDerivativeQuadrature)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
