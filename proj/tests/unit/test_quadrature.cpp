#include <qfim/errors.hpp>
#include <qfim/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qfim::quad {
namespace {

TEST(Quadrature, PolynomialIsExact) {
  const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
}

TEST(Quadrature, OscillatoryIntegrandRefines) {
  const auto r = integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 3.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sin(120.0) / 40.0, 1e-11);
  EXPECT_GT(r.intervals, 1);
}

TEST(Quadrature, HalfLine) {
  const auto r = integrate_half_line([](double s) { return std::exp(-s); });
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  const auto lorentz = integrate_half_line([](double s) { return 1.0 / (1.0 + s * s); });
  EXPECT_NEAR(lorentz.value, std::numbers::pi / 2.0, 1e-10);
}

TEST(Quadrature, LogSingularEndpoint) {
  const auto r = integrate_log_singular_left([](double t) { return std::log(t); }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
  const auto shifted = integrate_log_singular_left([](double t) { return std::log(t - 2.0); }, 2.0, 3.0);
  EXPECT_NEAR(shifted.value, -1.0, 1e-12);
}

TEST(Quadrature, GaussLegendreOnSmoothIntegrand) {
  EXPECT_NEAR(gauss_legendre([](double x) { return std::exp(x); }, 0.0, 1.0), std::exp(1.0) - 1.0, 1e-15);
}

TEST(Quadrature, NonConvergenceRaisesNumericError) {
  const Options tight{1e-15, 0.0, 1};
  const auto r = integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(require_converged(r, "test"), NumericError);
}

}  // namespace
}  // namespace qfim::quad
