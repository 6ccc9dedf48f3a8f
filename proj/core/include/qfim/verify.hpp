#pragma once

#include "qfim/divergences.hpp"
#include "qfim/families.hpp"
#include "qfim/infomat.hpp"
#include "qfim/kernels.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qfim {

struct PropertyReport {
  std::string name;
  std::size_t instances_run = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  // Replay information for the worst instance when it exceeds tolerance.
  std::string worst_instance;

  // Folds one instance into the report; pass is recomputed.
  void record(double violation, const std::string& instance);
  // Folds another report (max of violations, sum of instances).
  void merge(const PropertyReport& other);
};

// max(0, -lambda_min(B - A)) / max(1, |Tr A|, |Tr B|): how far A <= B is from holding.
[[nodiscard]] double loewner_violation(const RealMatrix& a, const RealMatrix& b);

// Passes iff the scaled violation above is <= tol.
[[nodiscard]] PropertyReport check_loewner(const InfoMatrix& a, const InfoMatrix& b, double tol);

// Loewner tolerances used by the suites.
inline constexpr double kOrderingTolerance = 1e-9;
inline constexpr double kMatrixInequalityTolerance = 1e-8;

// Petz matrices decrease on (0, 1/2] and increase on [1/2, inf); consecutive grid
// points on the same side are compared.
[[nodiscard]] PropertyReport check_petz_ordering(const StateFamily& family, const RealVector& theta,
                                                 std::vector<double> alpha_grid, double tol = kOrderingTolerance);
// Sandwiched matrices increase in alpha.
[[nodiscard]] PropertyReport check_sandwiched_ordering(const StateFamily& family, const RealVector& theta,
                                                       std::vector<double> alpha_grid,
                                                       double tol = kOrderingTolerance);
// z -> I_{alpha,z} increases for alpha < 1 and decreases for alpha > 1.
[[nodiscard]] PropertyReport check_z_monotonicity(const StateFamily& family, const RealVector& theta, double alpha,
                                                  std::vector<double> z_grid, double tol = kOrderingTolerance);
// I_1 <= I_2 whenever zeta_1 <= zeta_2 pointwise (f_1 >= f_2).
[[nodiscard]] PropertyReport check_kernel_ordering(const StateFamily& family, const RealVector& theta,
                                                   const ZetaKernel& smaller, const ZetaKernel& larger,
                                                   double tol = kOrderingTolerance);

// I_F(theta) - I_{N o F}(theta) >= 0.
[[nodiscard]] PropertyReport check_dp_info(const FamilyPtr& family, const RealVector& theta,
                                           const QuantumChannel& channel, const ZetaKernel& kernel,
                                           double tol = kMatrixInequalityTolerance);

// sum_x p(x) I(rho_x) - I(sum_x p(x) rho_x) >= 0 for fixed weights p.
[[nodiscard]] PropertyReport check_convexity(const std::vector<FamilyPtr>& branches, const RealVector& weights,
                                             const RealVector& theta, const ZetaKernel& kernel,
                                             double tol = kMatrixInequalityTolerance);

// Sandwiched <= Petz (all alpha), alpha * Petz <= sandwiched (alpha < 1), and
// monotonicity of z -> D_{alpha,z}. Violations are scaled by max(1, |rhs|).
[[nodiscard]] PropertyReport check_renyi_value_orderings(const HermitianOperator& rho, const HermitianOperator& sigma,
                                                         double alpha, double tol = 1e-12);

// Seeded, deterministic property suites.
struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t instances = 10;
  // Multiplies the kernel off the diagonal in the oracle suite; 1 leaves it intact.
  double kernel_perturbation = 1.0;
};

// Random searches for data-processing counterexamples. They assert nothing: a
// positive max_violation is an observed counterexample, zero means none was found.
struct ExplorationResult {
  std::string name;
  std::size_t trials = 0;
  // Largest scaled increase under a channel; 0 when no instance increased.
  double max_violation = 0.0;
  std::uint64_t seed = 0;
  std::string worst_instance;
};

// D(N(rho) || N(sigma)) - D(rho || sigma), scaled by max(1, |D(rho || sigma)|), over random
// states, scales and channels with d in {2, 3}.
[[nodiscard]] ExplorationResult search_divergence_dp_violation(const DivergenceSpec& divergence, std::size_t trials,
                                                               std::uint64_t seed);
// Loewner violation of I_{N o F} <= I_F for the alpha-z kernel over random thermal families and channels.
[[nodiscard]] ExplorationResult scan_kernel_dp(const RenyiParams& params, std::size_t trials, std::uint64_t seed);

[[nodiscard]] std::vector<std::string> suite_names();
// Throws ValidationError for an unknown name.
[[nodiscard]] PropertyReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace qfim
