#include <qfim/divergences.hpp>
#include <qfim/errors.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qfim {
namespace {

using oracle::max_abs;

HermitianOperator random_state(Index d, std::mt19937_64& rng) {
  return HermitianOperator(oracle::random_density(d, rng), HermitianPolicy::symmetrize);
}

class DivergencePairs : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 6; ++k) pairs.emplace_back(random_state(2 + k % 3, rng), random_state(2 + k % 3, rng));
  }
  std::vector<std::pair<HermitianOperator, HermitianOperator>> pairs;
};

TEST_F(DivergencePairs, UmegakiMatchesReference) {
  for (const auto& [rho, sigma] : pairs) {
    EXPECT_NEAR(umegaki(rho, sigma), oracle::umegaki(rho.matrix(), sigma.matrix()), 1e-12);
  }
}

TEST_F(DivergencePairs, PetzAndSandwichedMatchReference) {
  for (const auto& [rho, sigma] : pairs) {
    for (double a : {0.3, 0.5, 0.8, 1.5, 2.0}) {
      EXPECT_NEAR(petz_renyi(rho, sigma, a), oracle::petz_renyi(rho.matrix(), sigma.matrix(), a), 1e-11);
      EXPECT_NEAR(sandwiched_renyi(rho, sigma, a), oracle::sandwiched_renyi(rho.matrix(), sigma.matrix(), a), 1e-11);
    }
  }
}

TEST_F(DivergencePairs, AlphaZReducesToPetzAndSandwiched) {
  for (const auto& [rho, sigma] : pairs) {
    for (double a : {0.4, 0.7, 1.6}) {
      EXPECT_NEAR(alpha_z_renyi(rho, sigma, RenyiParams(a, 1.0)), petz_renyi(rho, sigma, a), 1e-12);
      EXPECT_NEAR(alpha_z_renyi(rho, sigma, RenyiParams(a, a)), sandwiched_renyi(rho, sigma, a), 1e-12);
      // Tr[(A B A)^z] = Tr[(B^{1/2} A^2 B^{1/2})^z], so the two orderings agree.
      const RenyiParams p(a, 0.8);
      EXPECT_NEAR(alpha_z_renyi(rho, sigma, p), alpha_z_renyi_rho_outside(rho, sigma, p), 1e-11);
    }
  }
}

TEST_F(DivergencePairs, AlphaToOneApproachesUmegaki) {
  for (const auto& [rho, sigma] : pairs) {
    const double d = umegaki(rho, sigma);
    EXPECT_NEAR(petz_renyi(rho, sigma, 1.0 - 1e-6), d, 1e-5);
    EXPECT_NEAR(alpha_z_renyi(rho, sigma, RenyiParams(1.0 + 1e-6, 0.7)), d, 1e-5);
  }
}

TEST_F(DivergencePairs, VanishOnEqualArguments) {
  for (const auto& [rho, sigma] : pairs) {
    (void)sigma;
    EXPECT_NEAR(umegaki(rho, rho), 0.0, 1e-13);
    EXPECT_NEAR(alpha_z_renyi(rho, rho, RenyiParams(0.6, 1.3)), 0.0, 1e-13);
    EXPECT_NEAR(log_euclidean_renyi(rho, rho, 0.6), 0.0, 1e-13);
    EXPECT_NEAR(belavkin_staszewski(rho, rho), 0.0, 1e-13);
  }
}

TEST_F(DivergencePairs, CommutingArgumentsCollapseToClassical) {
  RealVector p(3), q(3);
  p << 0.2, 0.3, 0.5;
  q << 0.4, 0.4, 0.2;
  const auto rho = HermitianOperator::diagonal(p);
  const auto sigma = HermitianOperator::diagonal(q);
  EXPECT_NEAR(umegaki(rho, sigma), classical_kl(p, q), 1e-14);
  EXPECT_NEAR(belavkin_staszewski(rho, sigma), classical_kl(p, q), 1e-13);
  for (double a : {0.5, 2.0}) {
    const double c = classical_renyi(p, q, a);
    EXPECT_NEAR(alpha_z_renyi(rho, sigma, RenyiParams(a, 1.7)), c, 1e-13);
    EXPECT_NEAR(log_euclidean_renyi(rho, sigma, a), c, 1e-13);
    EXPECT_NEAR(geometric_renyi(rho, sigma, a), c, 1e-13);
  }
}

TEST(Divergences, DomainChecks) {
  EXPECT_THROW(RenyiParams(1.0, 1.0), DomainError);
  EXPECT_THROW(RenyiParams(0.5, 0.0), DomainError);
  RealVector v(2);
  v << 1.0, 0.0;
  const auto pure = HermitianOperator::diagonal(v);
  const auto mixed = HermitianOperator::identity(2) * 0.5;
  EXPECT_THROW((void)umegaki(mixed, pure), DomainError);
  EXPECT_THROW((void)umegaki(HermitianOperator::identity(2), mixed), ValidationError);
}

TEST(RenyiParams, DataProcessingRegion) {
  EXPECT_TRUE(RenyiParams(0.5, 0.5).data_processing_region());
  EXPECT_FALSE(RenyiParams(0.3, 0.5).data_processing_region());
  EXPECT_TRUE(RenyiParams(2.0, 1.0).data_processing_region());
  EXPECT_TRUE(RenyiParams(1.5, 1.0).data_processing_region());
  EXPECT_FALSE(RenyiParams(2.0, 3.0).data_processing_region());
}

TEST(DivergenceSpec, PrefactorsAndDispatch) {
  std::mt19937_64 rng(3);
  const auto rho = random_state(2, rng);
  const auto sigma = random_state(2, rng);
  EXPECT_EQ(DivergenceSpec::umegaki().prefactor(), 1.0);
  EXPECT_EQ(DivergenceSpec::belavkin_staszewski().prefactor(), 1.0);
  EXPECT_DOUBLE_EQ(DivergenceSpec::petz(0.25).prefactor(), 4.0);
  EXPECT_DOUBLE_EQ(DivergenceSpec::alpha_z(RenyiParams(2.0, 1.0)).prefactor(), 0.5);
  EXPECT_NEAR(DivergenceSpec::sandwiched(0.7)(rho, sigma), sandwiched_renyi(rho, sigma, 0.7), 1e-15);
  EXPECT_NEAR(DivergenceSpec::umegaki()(rho, sigma), umegaki(rho, sigma), 1e-15);
}

TEST(Channels, KrausCompletenessIsChecked) {
  EXPECT_THROW(QuantumChannel({Matrix::Identity(2, 2) * 2.0}), ValidationError);
  std::mt19937_64 rng(4);
  const auto ch = random_channel(3, 2, 3, rng);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& k : ch.kraus_ops()) sum += k.adjoint() * k;
  EXPECT_LT(max_abs(Matrix(sum - Matrix::Identity(3, 3))), 1e-12);
  const auto out = apply_channel(ch, random_state(3, rng));
  EXPECT_EQ(out.dim(), 2);
  EXPECT_NEAR(out.trace(), 1.0, 1e-13);
  EXPECT_GT(eig_hermitian(out).min_eigenvalue(), 0.0);
}

TEST(Channels, DepolarizingAndPartialTrace) {
  std::mt19937_64 rng(5);
  const auto rho = random_state(2, rng);
  const auto out = apply_channel(depolarizing_channel(2, 0.3), rho);
  const Matrix expected = 0.7 * rho.matrix() + 0.3 * 0.5 * Matrix::Identity(2, 2);
  EXPECT_LT(max_abs(Matrix(out.matrix() - expected)), 1e-15);
  EXPECT_THROW((void)depolarizing_channel(2, 1.5), DomainError);

  const auto sigma = random_state(3, rng);
  const HermitianOperator joint(kron(rho.matrix(), sigma.matrix()), HermitianPolicy::symmetrize);
  const auto reduced = apply_channel(partial_trace_channel(2, 3), joint);
  EXPECT_LT(max_abs(Matrix(reduced.matrix() - rho.matrix())), 1e-15);
  EXPECT_LT(max_abs(Matrix(apply_channel(identity_channel(2), rho).matrix() - rho.matrix())), 1e-16);
}

TEST(Channels, PushforwardCommutesWithDerivative) {
  std::mt19937_64 rng(6);
  const FamilyPtr fam = random_thermal_family(3, 2, rng);
  const auto ch = random_channel(3, 2, 2, rng);
  const auto pushed = pushforward_family(fam, ch);
  const RealVector theta = random_parameters(2, rng);
  EXPECT_LT(max_abs(Matrix(pushed->state(theta).matrix() - apply_channel(ch, fam->state(theta)).matrix())), 1e-15);
  const Matrix fd = family_derivative_fd(*pushed, theta, 1).matrix();
  EXPECT_LT(max_abs(Matrix(pushed->derivative(theta, 1).matrix() - fd)), 1e-8);
}

TEST(DataProcessing, DivergencesDecreaseUnderChannels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_state(3, rng);
    const auto sigma = random_state(3, rng);
    const auto ch = random_channel(3, 2, 2, rng);
    const auto nr = apply_channel(ch, rho);
    const auto ns = apply_channel(ch, sigma);
    EXPECT_LE(umegaki(nr, ns), umegaki(rho, sigma) + 1e-12);
    for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {0.7, 1.0}, {2.0, 1.0}, {1.5, 1.5}}) {
      const RenyiParams p(a, z);
      EXPECT_LE(alpha_z_renyi(nr, ns, p), alpha_z_renyi(rho, sigma, p) + 1e-12);
    }
  }
}

}  // namespace
}  // namespace qfim
