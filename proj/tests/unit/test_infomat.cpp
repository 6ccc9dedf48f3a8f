#include <qfim/errors.hpp>
#include <qfim/infomat.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qfim {
namespace {

using oracle::max_abs;

RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Index>(xs.size()));
  Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

HermitianOperator herm(const Matrix& m) { return HermitianOperator(m, HermitianPolicy::symmetrize); }

std::shared_ptr<const ThermalFamily> bloch_z() {
  return std::make_shared<ThermalFamily>(std::vector<HermitianOperator>{herm(oracle::pauli_z())});
}

struct RandomFixture {
  FamilyPtr family;
  RealVector theta;
};

std::vector<RandomFixture> random_fixtures(std::uint64_t seed, int count, Index dim = 3, std::size_t params = 2) {
  std::mt19937_64 rng(seed);
  std::vector<RandomFixture> out;
  for (int k = 0; k < count; ++k) {
    auto fam = random_thermal_family(dim, params, rng);
    out.push_back({fam, random_parameters(params, rng)});
  }
  return out;
}

TEST(InfoSpectral, BlochZKuboMoriIsVariance) {
  const auto fam = bloch_z();
  EXPECT_NEAR(info_spectral(*fam, vec({0.0}), ZetaKernel::kubo_mori()).values(0, 0), 1.0, 1e-14);
  for (double t : {0.3, -1.1, 2.0}) {
    const double expected = 1.0 - std::tanh(t) * std::tanh(t);
    EXPECT_NEAR(info_spectral(*fam, vec({t}), ZetaKernel::kubo_mori()).values(0, 0), expected, 1e-13);
    // Commuting derivative: every kernel with kappa = 1 gives the same value.
    EXPECT_NEAR(info_spectral(*fam, vec({t}), ZetaKernel::alpha_z(RenyiParams(0.3, 2.0))).values(0, 0), expected,
                1e-13);
  }
}

TEST(InfoSpectral, RecordsProvenanceAndInvariants) {
  for (const auto& [fam, theta] : random_fixtures(41, 5)) {
    const auto info = info_spectral(*fam, theta, ZetaKernel::petz(0.4));
    EXPECT_EQ(info.method, InfoMethod::spectral);
    EXPECT_EQ(info.theta, theta);
    EXPECT_EQ(info.size(), 2);
    EXPECT_LT(info.asymmetry(), 1e-14);
    EXPECT_TRUE(info.satisfies_invariants());
    EXPECT_GT(info.min_eigenvalue(), 0.0);
  }
}

TEST(InfoSpectral, RejectsStatesOffTheOpenCone) {
  RealVector v(2);
  v << 1.0, 0.0;
  EXPECT_THROW((void)info_spectral_values(HermitianOperator::diagonal(v), {herm(oracle::pauli_z())},
                                          ZetaKernel::kubo_mori()),
               DomainError);
}

TEST(KuboMori, ThreePathsAgree) {
  for (const auto& [fam, theta] : random_fixtures(42, 5)) {
    const auto dd = info_kubo_mori(*fam, theta, KuboMoriPath::divided_difference).values;
    const auto ld = info_kubo_mori(*fam, theta, KuboMoriPath::log_derivative).values;
    const auto ri = info_kubo_mori(*fam, theta, KuboMoriPath::resolvent_integral).values;
    EXPECT_LT(max_abs(RealMatrix(dd - ld)), 1e-8);
    EXPECT_LT(max_abs(RealMatrix(dd - ri)), 1e-8);
    EXPECT_LT(max_abs(RealMatrix(dd - info_spectral(*fam, theta, ZetaKernel::kubo_mori()).values)), 1e-12);
  }
}

TEST(KuboMori, EqualsUmegakiHessian) {
  for (const auto& [fam, theta] : random_fixtures(43, 3)) {
    const auto spectral = info_kubo_mori(*fam, theta).values;
    const auto hess = info_hessian_oracle(*fam, theta, DivergenceSpec::umegaki()).values;
    EXPECT_LT(relative_deviation(hess, spectral), 1e-6);
  }
}

TEST(Rld, MatchesKernelAndBelavkinStaszewskiHessian) {
  for (const auto& [fam, theta] : random_fixtures(44, 3)) {
    const auto direct = info_rld(*fam, theta).values;
    EXPECT_LT(max_abs(RealMatrix(direct - info_spectral(*fam, theta, ZetaKernel::rld()).values)), 1e-12);
    const auto hess = info_hessian_oracle(*fam, theta, DivergenceSpec::belavkin_staszewski()).values;
    EXPECT_LT(relative_deviation(hess, direct), 1e-6);
    const auto geo = info_hessian_oracle(*fam, theta, DivergenceSpec::geometric(0.5)).values;
    EXPECT_LT(relative_deviation(geo, direct), 1e-6);
  }
}

TEST(LogEuclidean, HessianGivesKuboMori) {
  for (const auto& [fam, theta] : random_fixtures(45, 3)) {
    const auto hess = info_hessian_oracle(*fam, theta, DivergenceSpec::log_euclidean(0.6)).values;
    EXPECT_LT(relative_deviation(hess, info_kubo_mori(*fam, theta).values), 1e-6);
  }
}

TEST(AlphaZ, HessianMatchesSpectral) {
  for (const auto& [fam, theta] : random_fixtures(46, 2)) {
    for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {0.3, 1.4}, {2.0, 1.0}, {1.5, 0.8}}) {
      const RenyiParams p(a, z);
      const auto spectral = info_spectral(*fam, theta, ZetaKernel::alpha_z(p)).values;
      const auto hess = info_hessian_oracle(*fam, theta, DivergenceSpec::alpha_z(p)).values;
      EXPECT_LT(relative_deviation(hess, spectral), 1e-6) << "alpha=" << a << " z=" << z;
    }
  }
}

TEST(IntegralRepresentations, PetzAndSandwiched) {
  for (const auto& [fam, theta] : random_fixtures(47, 3)) {
    for (double a : {0.2, 0.5, 0.8}) {
      const auto petz = info_spectral(*fam, theta, ZetaKernel::petz(a)).values;
      EXPECT_LT(relative_deviation(info_petz_integral(*fam, theta, a).values, petz), 1e-6);
      const auto sand = info_spectral(*fam, theta, ZetaKernel::sandwiched(a)).values;
      EXPECT_LT(relative_deviation(info_sandwiched_integral(*fam, theta, a).values, sand), 1e-6);
    }
    const auto two = info_spectral(*fam, theta, ZetaKernel::sandwiched(2.0)).values;
    EXPECT_LT(relative_deviation(info_sandwiched_two(*fam, theta).values, two), 1e-10);
  }
}

TEST(PureState, RotationFamilyHasConstantInformation) {
  const auto fam = real_rotation_family();
  for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {0.5, 1.0}, {0.3, 0.6}, {0.8, 2.0}}) {
    const auto info = info_pure_state(fam, vec({0.7}), RenyiParams(a, z));
    EXPECT_NEAR(info.values(0, 0), 2.0 * z / (a * (1.0 - a)), 1e-13);
    EXPECT_EQ(info.method, InfoMethod::pure_state);
  }
  // A global phase carries no information.
  std::mt19937_64 rng(8);
  const auto phase = global_phase_family(random_state_vector(3, rng));
  EXPECT_NEAR(info_pure_state(phase, vec({0.4}), RenyiParams(0.5, 1.0)).values(0, 0), 0.0, 1e-14);
  EXPECT_THROW((void)info_pure_state(fam, vec({0.1}), RenyiParams(2.0, 1.0)), DomainError);
}

TEST(Classical, FisherAndHessians) {
  const auto b = bernoulli_family();
  const RealVector theta = vec({0.3});
  const double fisher = 1.0 / (0.3 * 0.7);
  EXPECT_NEAR(info_classical(b, theta).values(0, 0), fisher, 1e-13);
  EXPECT_NEAR(info_classical_hessian(b, theta, ClassicalDivergence::kl).values(0, 0), fisher, 1e-4 * fisher);
  for (double a : {0.5, 2.0}) {
    EXPECT_NEAR(info_classical_hessian(b, theta, ClassicalDivergence::renyi, a).values(0, 0), fisher,
                1e-4 * fisher);
  }
}

TEST(Classical, CommutingFamilyCollapsesToFisher) {
  RealMatrix w(3, 2);
  w << 1.0, 0.2, -0.5, 0.7, 0.3, -1.0;
  const auto s = softmax_family(w, RealVector::Zero(3));
  const auto fam = commuting_family(s);
  const RealVector theta = vec({0.4, -0.2});
  const auto fisher = info_classical(s, theta).values;
  for (const auto& kernel : {ZetaKernel::kubo_mori(), ZetaKernel::rld(), ZetaKernel::alpha_z(RenyiParams(0.3, 2.0)),
                             ZetaKernel::sandwiched(3.0)}) {
    EXPECT_LT(max_abs(RealMatrix(info_spectral(*fam, theta, kernel).values - fisher)), 1e-10) << kernel.name();
  }
}

TEST(ClassicalQuantum, DecompositionMatchesJointState) {
  std::mt19937_64 rng(48);
  std::vector<FamilyPtr> branches;
  for (int x = 0; x < 3; ++x) branches.push_back(random_thermal_family(2, 2, rng));
  RealMatrix w(3, 2);
  w << 0.5, -0.3, 0.1, 0.9, -0.7, 0.2;
  const ClassicalQuantumFamily cq(softmax_family(w, RealVector::Zero(3)), branches);
  const RealVector theta = random_parameters(2, rng);
  for (const auto& kernel : {ZetaKernel::kubo_mori(), ZetaKernel::rld(), ZetaKernel::alpha_z(RenyiParams(0.6, 0.9))}) {
    const auto joint = info_spectral(*cq.embedded(), theta, kernel).values;
    const auto split = info_cq_decomposed(cq, theta, kernel).values;
    EXPECT_LT(max_abs(RealMatrix(joint - split)), 1e-10);
  }
  const auto custom = ZetaKernel::custom("h", [](double x, double y) { return 2.0 / (x + y); }, 1.0);
  EXPECT_THROW((void)info_cq_decomposed(cq, theta, custom), DomainError);
}

TEST(InfoMatrix, RelativeDeviationUsesFloor) {
  RealMatrix a(1, 1), b(1, 1);
  a << 1e-9;
  b << 0.0;
  EXPECT_NEAR(relative_deviation(a, b), 1e-3, 1e-15);
  a << 2.0;
  b << 1.0;
  EXPECT_NEAR(relative_deviation(a, b), 1.0, 1e-15);
}

}  // namespace
}  // namespace qfim
