#include <qfim/errors.hpp>
#include <qfim/kernels.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qfim {
namespace {

// Independent evaluation of the alpha-z kernel as a product of two divided differences.
double product_form(double x, double y, double alpha, double z) {
  const double a = alpha / z;
  const double b = (1.0 - alpha) / z;
  const double first = (std::pow(x, a) - std::pow(y, a)) / (x - y);
  const double second = (std::pow(x, b) - std::pow(y, b)) / (std::pow(x, 1.0 / z) - std::pow(y, 1.0 / z));
  return z / (alpha * (1.0 - alpha)) * first * second;
}

TEST(ZetaAlphaZ, WorkedValues) {
  EXPECT_NEAR(zeta_alpha_z(2.0, 2.0, 0.3, 0.7), 0.5, 1e-14);
  EXPECT_NEAR(zeta_alpha_z(1.0, 2.0, 2.0, 1.0), 0.75, 1e-14);
  EXPECT_NEAR(zeta_alpha_z(1.0, 4.0, 2.0, 2.0), 0.5, 1e-14);
  EXPECT_NEAR(zeta_alpha_z(2.0, 1.0, 1.0 + 1e-9, 1.0), std::log(2.0), 1e-12);
  EXPECT_NEAR(zeta_petz(1.0, 4.0, 0.5), 4.0 / 9.0, 1e-14);
}

TEST(ZetaAlphaZ, MatchesProductOfDividedDifferences) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (double alpha : {0.2, 0.5, 0.9, 1.3, 2.0, 3.5}) {
    for (double z : {0.3, 0.5, 1.0, 2.0, 5.0}) {
      for (int k = 0; k < 5; ++k) {
        const double x = u(rng), y = u(rng);
        const double ref = product_form(x, y, alpha, z);
        EXPECT_NEAR(zeta_alpha_z(x, y, alpha, z), ref, 1e-11 * std::max(1.0, std::abs(ref)))
            << "alpha=" << alpha << " z=" << z << " x=" << x << " y=" << y;
      }
    }
  }
}

TEST(ZetaAlphaZ, StructuralProperties) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (double alpha : {0.4, 1.7}) {
    for (double z : {0.6, 1.9}) {
      for (int k = 0; k < 5; ++k) {
        const double x = u(rng), y = u(rng), s = u(rng);
        const double v = zeta_alpha_z(x, y, alpha, z);
        EXPECT_GT(v, 0.0);
        EXPECT_NEAR(v, zeta_alpha_z(y, x, alpha, z), 1e-14 * v);
        EXPECT_NEAR(zeta_alpha_z(s * x, s * y, alpha, z), v / s, 1e-11 * v / s);
        EXPECT_NEAR(zeta_alpha_z(x, x, alpha, z), 1.0 / x, 1e-13 / x);
      }
    }
  }
}

TEST(ZetaAlphaZ, NearDiagonalIsContinuous) {
  for (double alpha : {0.3, 2.5}) {
    const double on = zeta_alpha_z(1.0, 1.0, alpha, 0.8);
    const double near = zeta_alpha_z(1.0, 1.0 + 1e-9, alpha, 0.8);
    const double off = zeta_alpha_z(1.0, 1.0 + 1e-5, alpha, 0.8);
    EXPECT_NEAR(near, on, 1e-8);
    EXPECT_NEAR(off, on, 1e-4);
  }
}

TEST(ZetaAlphaZ, LimitsReturnKuboMori) {
  EXPECT_NEAR(zeta_alpha_z(0.3, 2.0, 1.0 + 1e-4, 0.7), zeta_kubo_mori(0.3, 2.0), 1e-4);
  EXPECT_NEAR(zeta_alpha_z(0.3, 2.0, 0.6, 1e6), zeta_kubo_mori(0.3, 2.0), 1e-4);
  EXPECT_NEAR(zeta_alpha_z(0.3, 2.0, 0.6, 1e8), zeta_kubo_mori(0.3, 2.0), 1e-12);
  EXPECT_EQ(zeta_alpha_z(0.3, 2.0, 0.6, 1e14), zeta_kubo_mori(0.3, 2.0));
  EXPECT_THROW((void)zeta_alpha_z(-1.0, 2.0, 0.5, 1.0), DomainError);
}

TEST(ZetaKernels, NamedMembers) {
  EXPECT_NEAR(zeta_kubo_mori(2.0, 1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(zeta_kubo_mori(3.0, 3.0), 1.0 / 3.0, 1e-15);
  for (double x : {0.2, 1.0, 7.0}) {
    for (double y : {0.5, 3.0}) {
      EXPECT_NEAR(zeta_petz(x, y, 2.0), zeta_rld(x, y), 1e-13);
      EXPECT_NEAR(zeta_sandwiched(x, y, 0.6), zeta_alpha_z(x, y, 0.6, 0.6), 1e-15);
    }
  }
  EXPECT_NEAR(mc_function_petz(1.0, 0.3), 1.0, 1e-15);
  EXPECT_NEAR(mc_function_sandwiched(1.0, 1.7), 1.0, 1e-15);
}

TEST(ZetaKernels, CandidateIsMonotoneInsideRegion) {
  for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {0.3, 1.0}, {2.0, 1.0}, {1.5, 1.2}}) {
    const RenyiParams p(a, z);
    ASSERT_TRUE(p.data_processing_region());
    double prev = 0.0;
    for (double x = 0.01; x < 50.0; x *= 1.2) {
      const double f = operator_monotone_candidate(x, p);
      EXPECT_GT(f, prev);
      prev = f;
    }
    EXPECT_NEAR(operator_monotone_candidate(1.0, p), 1.0, 1e-14);
  }
}

TEST(ZetaKernel, ObjectInterface) {
  const auto km = ZetaKernel::kubo_mori();
  EXPECT_EQ(km.label(), KernelLabel::kubo_mori);
  EXPECT_EQ(km.kappa(), 1.0);
  EXPECT_NEAR(km.f_of_t(4.0), 3.0 / std::log(4.0), 1e-14);
  const auto az = ZetaKernel::alpha_z(RenyiParams(0.4, 0.9));
  ASSERT_TRUE(az.alpha().has_value());
  EXPECT_EQ(*az.alpha(), 0.4);
  EXPECT_EQ(*az.z(), 0.9);
  const auto doubled = az.scaled(2.0);
  EXPECT_EQ(doubled.label(), KernelLabel::custom);
  EXPECT_EQ(doubled.kappa(), 2.0);
  EXPECT_NEAR(doubled(0.3, 0.8), 2.0 * az(0.3, 0.8), 1e-15);
  const auto custom = ZetaKernel::custom("harmonic", [](double x, double y) { return 2.0 / (x + y); }, 1.0);
  EXPECT_EQ(custom.name(), "harmonic");
  EXPECT_NEAR(custom(1.0, 3.0), 0.5, 1e-15);
  EXPECT_EQ(to_string(KernelLabel::rld), "rld");
}

}  // namespace
}  // namespace qfim
