#pragma once

#include "qfim/matcore.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qfim {

enum class FamilyKind { explicit_state, thermal, time_evolved, pure, classical_quantum };

[[nodiscard]] std::string to_string(FamilyKind kind);

inline constexpr double kMinEigFloor = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;

// 1e-5 * max(1, |theta|_inf).
[[nodiscard]] double default_fd_step(const RealVector& theta);

// Throws ValidationError unless rho has unit trace and min eigenvalue >= floor.
void validate_state(const HermitianOperator& rho, double floor, const std::string& context);

// theta -> rho(theta). Implementations are immutable after construction.
class StateFamily {
 public:
  virtual ~StateFamily() = default;

  [[nodiscard]] virtual std::size_t param_dim() const = 0;
  [[nodiscard]] virtual Index dim() const = 0;
  [[nodiscard]] virtual FamilyKind kind() const = 0;
  [[nodiscard]] virtual std::string label() const = 0;

  // Raw evaluation, no positivity check.
  [[nodiscard]] virtual HermitianOperator evaluate(const RealVector& theta) const = 0;
  // d rho / d theta_i. Falls back to a centered finite difference.
  [[nodiscard]] virtual HermitianOperator derivative(const RealVector& theta, std::size_t i) const;

  [[nodiscard]] double min_eig_floor() const noexcept { return floor_; }

  // Validated evaluation.
  [[nodiscard]] HermitianOperator state(const RealVector& theta) const;
  [[nodiscard]] std::vector<HermitianOperator> derivatives(const RealVector& theta) const;

 protected:
  explicit StateFamily(double min_eig_floor = kMinEigFloor) : floor_(min_eig_floor) {}
  void check_theta(const RealVector& theta) const;

 private:
  double floor_;
};

using FamilyPtr = std::shared_ptr<const StateFamily>;

// Centered difference of the validated state, symmetrized. h <= 0 picks default_fd_step.
[[nodiscard]] HermitianOperator family_derivative_fd(const StateFamily& family, const RealVector& theta,
                                                     std::size_t i, double h = 0.0);

class ExplicitFamily final : public StateFamily {
 public:
  using Evaluator = std::function<HermitianOperator(const RealVector&)>;
  using Differentiator = std::function<HermitianOperator(const RealVector&, std::size_t)>;

  ExplicitFamily(std::string label, Index dim, std::size_t param_dim, Evaluator evaluator,
                 Differentiator differentiator = {}, double min_eig_floor = kMinEigFloor,
                 FamilyKind kind = FamilyKind::explicit_state);

  [[nodiscard]] std::size_t param_dim() const override { return param_dim_; }
  [[nodiscard]] Index dim() const override { return dim_; }
  [[nodiscard]] FamilyKind kind() const override { return kind_; }
  [[nodiscard]] std::string label() const override { return label_; }
  [[nodiscard]] HermitianOperator evaluate(const RealVector& theta) const override;
  [[nodiscard]] HermitianOperator derivative(const RealVector& theta, std::size_t i) const override;

 private:
  std::string label_;
  Index dim_;
  std::size_t param_dim_;
  Evaluator evaluator_;
  Differentiator differentiator_;
  FamilyKind kind_;
};

// rho(theta) = base + sum_j theta_j directions_j; directions should be traceless.
[[nodiscard]] FamilyPtr affine_family(HermitianOperator base, std::vector<HermitianOperator> directions,
                                      std::string label = "affine", double min_eig_floor = kMinEigFloor);

// rho(theta) = exp(-H(theta)) / Z(theta), H(theta) = bias + sum_j theta_j generators_j.
class ThermalFamily final : public StateFamily {
 public:
  explicit ThermalFamily(std::vector<HermitianOperator> generators,
                         std::optional<HermitianOperator> bias = std::nullopt,
                         double min_eig_floor = kMinEigFloor);

  [[nodiscard]] std::size_t param_dim() const override { return generators_.size(); }
  [[nodiscard]] Index dim() const override { return bias_.dim(); }
  [[nodiscard]] FamilyKind kind() const override { return FamilyKind::thermal; }
  [[nodiscard]] std::string label() const override { return "thermal"; }
  [[nodiscard]] HermitianOperator evaluate(const RealVector& theta) const override;
  [[nodiscard]] HermitianOperator derivative(const RealVector& theta, std::size_t i) const override;

  [[nodiscard]] const std::vector<HermitianOperator>& generators() const noexcept { return generators_; }
  [[nodiscard]] const HermitianOperator& bias() const noexcept { return bias_; }
  [[nodiscard]] HermitianOperator hamiltonian(const RealVector& theta) const;

 private:
  std::vector<HermitianOperator> generators_;
  HermitianOperator bias_;
};

[[nodiscard]] HermitianOperator thermal_state(const ThermalFamily& family, const RealVector& theta);
// -int_0^1 rho^t H_i rho^{1-t} dt + rho <H_i>, evaluated spectrally.
[[nodiscard]] HermitianOperator thermal_state_derivative(const ThermalFamily& family, const RealVector& theta,
                                                         std::size_t i);
// exp(-H)/Tr exp(-H), shifted by the smallest eigenvalue before exponentiation.
[[nodiscard]] HermitianOperator gibbs_state(const HermitianOperator& hamiltonian);

// Tr[rho X].
[[nodiscard]] double expectation(const HermitianOperator& rho, const HermitianOperator& x);

// int_0^1 e^{i delta t} dt = (e^{i delta} - 1)/(i delta), 1 at delta = 0.
[[nodiscard]] Complex phase_average(double delta);

// sigma(phi) = e^{-iH(phi)} rho e^{iH(phi)}, rho = e^{-G}/Tr e^{-G}, H(phi) = sum_j phi_j generators_j.
class TimeEvolvedFamily final : public StateFamily {
 public:
  TimeEvolvedFamily(HermitianOperator base_generator, std::vector<HermitianOperator> generators,
                    double min_eig_floor = kMinEigFloor);

  [[nodiscard]] std::size_t param_dim() const override { return generators_.size(); }
  [[nodiscard]] Index dim() const override { return base_generator_.dim(); }
  [[nodiscard]] FamilyKind kind() const override { return FamilyKind::time_evolved; }
  [[nodiscard]] std::string label() const override { return "time_evolved"; }
  [[nodiscard]] HermitianOperator evaluate(const RealVector& phi) const override;
  [[nodiscard]] HermitianOperator derivative(const RealVector& phi, std::size_t i) const override;

  [[nodiscard]] const HermitianOperator& base_generator() const noexcept { return base_generator_; }
  [[nodiscard]] const HermitianOperator& base_state() const noexcept { return base_state_; }
  [[nodiscard]] const std::vector<HermitianOperator>& generators() const noexcept { return generators_; }
  [[nodiscard]] HermitianOperator hamiltonian(const RealVector& phi) const;

 private:
  HermitianOperator base_generator_;
  HermitianOperator base_state_;
  std::vector<HermitianOperator> generators_;
};

// i [sigma(phi), Psi_phi^dagger(H_i)].
[[nodiscard]] HermitianOperator time_evolved_state_derivative(const TimeEvolvedFamily& family,
                                                              const RealVector& phi, std::size_t i);

// Rank-one family |psi(theta)><psi(theta)|; kept separate since it is not positive definite.
class PureStateFamily {
 public:
  using Amplitude = std::function<CVector(const RealVector&)>;
  using Tangent = std::function<CVector(const RealVector&, std::size_t)>;

  PureStateFamily(std::string label, Index dim, std::size_t param_dim, Amplitude amplitude, Tangent tangent);

  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t param_dim() const noexcept { return param_dim_; }
  // Validated: unit norm within 1e-10.
  [[nodiscard]] CVector amplitude(const RealVector& theta) const;
  [[nodiscard]] CVector tangent(const RealVector& theta, std::size_t i) const;

  // (1 - d eps)|psi><psi| + eps I with eps = floor, so the smallest eigenvalue is the floor.
  [[nodiscard]] FamilyPtr lifted(double floor) const;

 private:
  std::string label_;
  Index dim_;
  std::size_t param_dim_;
  Amplitude amplitude_;
  Tangent tangent_;
};

// (cos theta, sin theta).
[[nodiscard]] PureStateFamily real_rotation_family();
// e^{i theta} psi0.
[[nodiscard]] PureStateFamily global_phase_family(CVector psi0);

// theta -> probability vector in the interior of the simplex.
class ProbabilityFamily {
 public:
  using Evaluator = std::function<RealVector(const RealVector&)>;
  using Differentiator = std::function<RealVector(const RealVector&, std::size_t)>;

  ProbabilityFamily(std::string label, Index outcomes, std::size_t param_dim, Evaluator evaluator,
                    Differentiator differentiator = {});

  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] Index outcomes() const noexcept { return outcomes_; }
  [[nodiscard]] std::size_t param_dim() const noexcept { return param_dim_; }
  // Validated: entries positive, sum one within 1e-12.
  [[nodiscard]] RealVector probabilities(const RealVector& theta) const;
  [[nodiscard]] RealVector derivative(const RealVector& theta, std::size_t i) const;

 private:
  std::string label_;
  Index outcomes_;
  std::size_t param_dim_;
  Evaluator evaluator_;
  Differentiator differentiator_;
};

// (theta, 1 - theta).
[[nodiscard]] ProbabilityFamily bernoulli_family();
// p proportional to exp(weights * theta + offset).
[[nodiscard]] ProbabilityFamily softmax_family(RealMatrix weights, RealVector offset);
// theta-independent distribution.
[[nodiscard]] ProbabilityFamily constant_distribution(RealVector p, std::size_t param_dim);

// diag(p(theta)).
[[nodiscard]] FamilyPtr commuting_family(const ProbabilityFamily& p);

// rho_XA(theta) = sum_x p_theta(x) |x><x| (x) rho_x(theta).
class ClassicalQuantumFamily {
 public:
  ClassicalQuantumFamily(ProbabilityFamily weights, std::vector<FamilyPtr> branches);

  [[nodiscard]] std::size_t alphabet_size() const noexcept { return branches_.size(); }
  [[nodiscard]] std::size_t param_dim() const noexcept { return weights_.param_dim(); }
  [[nodiscard]] Index branch_dim() const { return branches_.front()->dim(); }
  [[nodiscard]] const ProbabilityFamily& weights() const noexcept { return weights_; }
  [[nodiscard]] const std::vector<FamilyPtr>& branches() const noexcept { return branches_; }

  // Block-diagonal joint state as an ordinary family.
  [[nodiscard]] FamilyPtr embedded() const;
  // sum_x p(x) rho_x(theta).
  [[nodiscard]] HermitianOperator average_state(const RealVector& theta) const;

 private:
  ProbabilityFamily weights_;
  std::vector<FamilyPtr> branches_;
};

// rho_a(theta_a) (x) rho_b(theta_b) with theta = (theta_a, theta_b).
[[nodiscard]] FamilyPtr tensor_product_family(FamilyPtr a, FamilyPtr b);

[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

// GUE sample rescaled to unit spectral norm.
[[nodiscard]] HermitianOperator random_gue(Index dim, std::mt19937_64& rng);
// exp(-(A0 + sum_j theta_j A_j))/Z with GUE A's.
[[nodiscard]] std::shared_ptr<const ThermalFamily> random_thermal_family(Index dim, std::size_t params,
                                                                         std::mt19937_64& rng);
// Uniform in [-scale, scale]^n.
[[nodiscard]] RealVector random_parameters(std::size_t n, std::mt19937_64& rng, double scale = 1.0);
// Haar-distributed state vector.
[[nodiscard]] CVector random_state_vector(Index dim, std::mt19937_64& rng);

}  // namespace qfim
