#pragma once

#include "qfim/divergences.hpp"
#include "qfim/families.hpp"
#include "qfim/kernels.hpp"

#include <string>
#include <vector>

namespace qfim {

enum class InfoMethod {
  spectral,
  hessian_fd,
  integral_rep,
  closed_form_thermal,
  closed_form_time_evolved,
  pure_state,
  classical
};

[[nodiscard]] std::string to_string(InfoMethod method);

// Symmetric positive semidefinite L x L matrix plus where it came from.
struct InfoMatrix {
  RealMatrix values;
  std::string kernel_label;
  std::string family_label;
  RealVector theta;
  InfoMethod method = InfoMethod::spectral;

  [[nodiscard]] Index size() const noexcept { return values.rows(); }
  [[nodiscard]] double asymmetry() const;
  [[nodiscard]] double min_eigenvalue() const;
  // Symmetric within 1e-8 and min eigenvalue >= -1e-8 * max(1, |trace|).
  [[nodiscard]] bool satisfies_invariants() const;
};

// Largest |a - b| entry divided by max(|b|_max, floor).
[[nodiscard]] double relative_deviation(const RealMatrix& a, const RealMatrix& b, double floor = 1e-6);

// sum_{k,l} zeta(lambda_k, lambda_l) Tr[P_k d_i rho P_l d_j rho] for a given state and tangent set.
[[nodiscard]] RealMatrix info_spectral_values(const HermitianOperator& rho,
                                              const std::vector<HermitianOperator>& tangents,
                                              const ZetaKernel& kernel);

[[nodiscard]] InfoMatrix info_spectral(const StateFamily& family, const RealVector& theta, const ZetaKernel& kernel);

// 3e-4 * max(1, |theta|_inf).
[[nodiscard]] double default_hessian_step(const RealVector& theta);

// prefactor * Hessian of eps -> D(rho(theta) || rho(theta + eps)) at eps = 0 by central
// second differences. h <= 0 selects default_hessian_step.
[[nodiscard]] InfoMatrix info_hessian_oracle(const StateFamily& family, const RealVector& theta,
                                             const DivergenceSpec& divergence, double h = 0.0);

// Gradient of eps -> D(rho(theta) || rho(theta + eps)) at eps = 0 by central differences.
[[nodiscard]] RealVector divergence_gradient_fd(const StateFamily& family, const RealVector& theta,
                                                const DivergenceSpec& divergence, double h = 0.0);

enum class KuboMoriPath { log_derivative, resolvent_integral, divided_difference };

[[nodiscard]] InfoMatrix info_kubo_mori(const StateFamily& family, const RealVector& theta,
                                        KuboMoriPath path = KuboMoriPath::divided_difference);

// 1/2 Tr[{d_i rho, d_j rho} rho^{-1}].
[[nodiscard]] InfoMatrix info_rld(const StateFamily& family, const RealVector& theta);

// alpha in (0,1).
[[nodiscard]] InfoMatrix info_petz_integral(const StateFamily& family, const RealVector& theta, double alpha);
[[nodiscard]] InfoMatrix info_sandwiched_integral(const StateFamily& family, const RealVector& theta,
                                                  double alpha);

// Tr[rho^{-1/2} d_i rho rho^{-1/2} d_j rho], the alpha = 2 sandwiched matrix.
[[nodiscard]] InfoMatrix info_sandwiched_two(const StateFamily& family, const RealVector& theta);

// 2z/(alpha(1-alpha)) Re <d_i psi| (I - |psi><psi|) |d_j psi>, alpha in (0,1).
[[nodiscard]] InfoMatrix info_pure_state(const PureStateFamily& family, const RealVector& theta,
                                         const RenyiParams& p);

[[nodiscard]] InfoMatrix info_classical(const ProbabilityFamily& family, const RealVector& theta);

enum class ClassicalDivergence { kl, renyi };

// Hessian of eps -> D(p_theta || p_{theta+eps}), divided by alpha for the Renyi case.
[[nodiscard]] InfoMatrix info_classical_hessian(const ProbabilityFamily& family, const RealVector& theta,
                                                ClassicalDivergence divergence, double alpha = 1.0,
                                                double h = 0.0);

// I_F(p) + sum_x p(x) I(rho_x). Kernel must be Kubo-Mori, RLD, or one of the alpha-z family.
[[nodiscard]] InfoMatrix info_cq_decomposed(const ClassicalQuantumFamily& family, const RealVector& theta,
                                            const ZetaKernel& kernel);

}  // namespace qfim
