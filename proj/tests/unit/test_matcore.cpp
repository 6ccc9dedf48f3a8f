#include <qfim/errors.hpp>
#include <qfim/matcore.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qfim {
namespace {

using oracle::max_abs;

HermitianOperator random_pd(Index d, std::mt19937_64& rng) {
  return HermitianOperator(oracle::random_density(d, rng), HermitianPolicy::symmetrize);
}

TEST(HermitianOperator, RejectsNonHermitianInput) {
  Matrix m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(HermitianOperator{m}, ValidationError);
  const HermitianOperator sym(m, HermitianPolicy::symmetrize);
  EXPECT_EQ(sym.matrix()(0, 1), Complex(1.0, 0.0));
}

TEST(HermitianOperator, ArithmeticAndTraceProduct) {
  const auto z = HermitianOperator(oracle::pauli_z());
  const auto x = HermitianOperator(oracle::pauli_x());
  EXPECT_DOUBLE_EQ(z.trace_product(z), 2.0);
  EXPECT_DOUBLE_EQ(z.trace_product(x), 0.0);
  const auto sum = 2.0 * z - x;
  EXPECT_DOUBLE_EQ(sum.matrix()(0, 0).real(), 2.0);
  EXPECT_DOUBLE_EQ(sum.matrix()(0, 1).real(), -1.0);
  EXPECT_DOUBLE_EQ(HermitianOperator::identity(3).trace(), 3.0);
}

TEST(EigHermitian, ReconstructsAndProjectorsResolveIdentity) {
  std::mt19937_64 rng(1);
  for (Index d : {2, 3, 5}) {
    const HermitianOperator a(oracle::random_hermitian(d, rng), HermitianPolicy::symmetrize);
    const auto s = eig_hermitian(a);
    EXPECT_LT(max_abs(Matrix(s.reconstruct().matrix() - a.matrix())), 1e-12);
    Matrix total = Matrix::Zero(d, d);
    for (const auto& p : s.projectors()) {
      EXPECT_LT(max_abs(Matrix(p * p - p)), 1e-12);
      total += p;
    }
    EXPECT_LT(max_abs(Matrix(total - Matrix::Identity(d, d))), 1e-12);
    for (std::size_t k = 1; k < s.eigenvalues().size(); ++k) EXPECT_LT(s.eigenvalues()[k - 1], s.eigenvalues()[k]);
  }
}

TEST(EigHermitian, ClustersDegenerateEigenvalues) {
  RealVector v(3);
  v << 1.0, 1.0 + 1e-12, 2.0;
  const auto s = eig_hermitian(HermitianOperator::diagonal(v));
  ASSERT_EQ(s.cluster_count(), 2u);
  EXPECT_NEAR(s.projectors()[0].trace().real(), 2.0, 1e-14);
  EXPECT_EQ(s.cluster_of_column()[0], s.cluster_of_column()[1]);
}

TEST(ApplyFunction, MatchesGeneralMatrixFunctions) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianOperator a = random_pd(4, rng);
    EXPECT_LT(max_abs(Matrix(apply_function(a, functions::exp()).matrix() - oracle::expm(a.matrix()))), 1e-13);
    EXPECT_LT(max_abs(Matrix(apply_function(a, functions::log()).matrix() - oracle::logm(a.matrix()))), 1e-12);
    EXPECT_LT(max_abs(Matrix(apply_function(a, functions::power(0.5)).matrix() - oracle::sqrtm(a.matrix()))),
              1e-13);
    EXPECT_LT(max_abs(Matrix(apply_function(a, functions::square()).matrix() - a.matrix() * a.matrix())), 1e-14);
  }
}

TEST(ApplyFunction, LogOfNonPositiveOperatorIsADomainError) {
  RealVector v(2);
  v << 0.5, -0.1;
  EXPECT_THROW((void)apply_function(HermitianOperator::diagonal(v), functions::log()), DomainError);
  EXPECT_THROW((void)matrix_power(eig_hermitian(HermitianOperator::diagonal(v)), 0.5), DomainError);
}

TEST(Exprel, SmallArgumentsAndZero) {
  EXPECT_EQ(exprel(0.0), 1.0);
  EXPECT_NEAR(exprel(1e-10), 1.0 + 5e-11, 1e-16);
  EXPECT_NEAR(exprel(1.0), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_NEAR(exprel(-30.0), (std::exp(-30.0) - 1.0) / -30.0, 1e-16);
}

TEST(DividedDifference, OffDiagonalAndDiagonal) {
  EXPECT_NEAR(divided_difference(functions::exp(), 1.0, 1.0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(divided_difference(functions::exp(), 2.0, 1.0), std::exp(2.0) - std::exp(1.0), 1e-13);
  EXPECT_NEAR(divided_difference(functions::log(), 4.0, 1.0), std::log(4.0) / 3.0, 1e-15);
  EXPECT_NEAR(divided_difference(functions::log(), 2.0, 2.0 + 1e-12), 0.5, 1e-11);
  EXPECT_NEAR(divided_difference(functions::power(0.5), 4.0, 1.0), 1.0 / 3.0, 1e-15);
  // Symmetric in its arguments.
  EXPECT_EQ(divided_difference(functions::log(), 0.3, 0.7), divided_difference(functions::log(), 0.7, 0.3));
}

struct NamedFunction {
  ScalarFunction f;
  std::function<Matrix(const Matrix&)> reference;
};

std::vector<NamedFunction> calculus_functions() {
  return {
      {functions::exp(), [](const Matrix& m) { return oracle::expm(m); }},
      {functions::log(), [](const Matrix& m) { return oracle::logm(m); }},
      {functions::power(0.5), [](const Matrix& m) { return oracle::sqrtm(m); }},
      {functions::square(), [](const Matrix& m) { return Matrix(m * m); }},
      {functions::power(-0.5), [](const Matrix& m) { return Matrix(oracle::sqrtm(m).inverse()); }},
  };
}

TEST(MatrixDerivative, DividedDifferenceMatchesFiniteDifferenceOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto fn = calculus_functions()[static_cast<std::size_t>(trial % 5)];
    const Index d = 2 + trial % 3;
    const HermitianOperator a = random_pd(d, rng);
    const HermitianOperator e(oracle::random_hermitian(d, rng, 0.1), HermitianPolicy::symmetrize);
    const Matrix analytic = matrix_derivative(eig_hermitian(a), e, fn.f).matrix();
    const Matrix fd = oracle::fd_directional(fn.reference, a.matrix(), e.matrix(), 1e-6);
    EXPECT_LT(max_abs(Matrix(analytic - fd)), 1e-6 * std::max(1.0, max_abs(fd))) << fn.f.label << " trial " << trial;
  }
}

TEST(MatrixDerivative, SpecializedPathsAgreeWithGenericPath) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator a = random_pd(3, rng);
    const HermitianOperator e(oracle::random_hermitian(3, rng), HermitianPolicy::symmetrize);
    const auto s = eig_hermitian(a);
    const Matrix exp_generic = matrix_derivative(s, e, functions::exp()).matrix();
    EXPECT_LT(max_abs(Matrix(duhamel_exp_derivative(s, e).matrix() - exp_generic)), 1e-10);
    const Matrix log_generic = matrix_derivative(s, e, functions::log()).matrix();
    EXPECT_LT(max_abs(Matrix(log_derivative_integral(s, e).matrix() - log_generic)), 1e-10);
    EXPECT_LT(max_abs(Matrix(log_derivative_quadrature(s, e).matrix() - log_generic)), 1e-8);
    for (double r : {0.5, -0.5, 0.3}) {
      const Matrix pow_generic = matrix_derivative(s, e, functions::power(r)).matrix();
      EXPECT_LT(max_abs(Matrix(power_derivative(s, e, r).matrix() - pow_generic)), 1e-10);
      EXPECT_LT(max_abs(Matrix(power_derivative_quadrature(s, e, r).matrix() - pow_generic)), 1e-8);
    }
  }
}

TEST(MatrixDerivative, DegenerateSpectrumUsesDerivativeOnDiagonal) {
  const auto s = eig_hermitian(HermitianOperator::identity(2) * 0.5);
  const HermitianOperator e(oracle::pauli_x());
  // d ln A at A = I/2 is 2 dA.
  EXPECT_LT(max_abs(Matrix(matrix_derivative(s, e, functions::log()).matrix() - 2.0 * e.matrix())), 1e-14);
}

TEST(TraceFunctionDerivative, EqualsTraceOfDerivativeTimesDirection) {
  std::mt19937_64 rng(5);
  const HermitianOperator a = random_pd(3, rng);
  const HermitianOperator e(oracle::random_hermitian(3, rng), HermitianPolicy::symmetrize);
  const auto s = eig_hermitian(a);
  // d Tr[A ln A] = Tr[(ln A + I) dA].
  ScalarFunction xlogx{"xlogx", [](double x) { return x * std::log(x); }, [](double x) { return std::log(x) + 1.0; },
                       FunctionDomain::positive, {}};
  const double expected = ((oracle::logm(a.matrix()) + Matrix::Identity(3, 3)) * e.matrix()).trace().real();
  EXPECT_NEAR(trace_function_derivative(s, e, xlogx), expected, 1e-12);
}

TEST(PowerDifferenceIntegral, MatchesDividedDifference) {
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, -0.2, -0.5, -0.8}) {
    for (auto [x, y] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {0.01, 5.0}, {1e-4, 0.3}, {0.7, 0.7}}) {
      const double exact = x == y ? r * std::pow(x, r - 1.0) : (std::pow(x, r) - std::pow(y, r)) / (x - y);
      EXPECT_NEAR(power_difference_integral(x, y, r), exact, 1e-10 * std::max(1.0, std::abs(exact)))
          << "r=" << r << " x=" << x << " y=" << y;
    }
  }
}

}  // namespace
}  // namespace qfim
