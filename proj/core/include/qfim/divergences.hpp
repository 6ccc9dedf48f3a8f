#pragma once

#include "qfim/families.hpp"
#include "qfim/matcore.hpp"

#include <random>
#include <string>
#include <vector>

namespace qfim {

// alpha > 0, alpha != 1, z > 0.
class RenyiParams {
 public:
  RenyiParams(double alpha, double z);
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double z() const noexcept { return z_; }
  // Sufficient region for data processing of the alpha-z divergence:
  // 0<alpha<1 with z >= max(alpha, 1-alpha), or alpha>1 with alpha-1 <= z <= alpha <= 2z.
  [[nodiscard]] bool data_processing_region() const noexcept;

 private:
  double alpha_;
  double z_;
};

// Quantum divergences. Inputs must be positive definite density operators.
[[nodiscard]] double umegaki(const HermitianOperator& rho, const HermitianOperator& sigma);
// (1/(alpha-1)) ln Tr[(sigma^{(1-a)/2z} rho^{a/z} sigma^{(1-a)/2z})^z]
[[nodiscard]] double alpha_z_renyi(const HermitianOperator& rho, const HermitianOperator& sigma,
                                   const RenyiParams& p);
// Same quantity with rho outside: (rho^{a/2z} sigma^{(1-a)/z} rho^{a/2z})^z.
[[nodiscard]] double alpha_z_renyi_rho_outside(const HermitianOperator& rho, const HermitianOperator& sigma,
                                               const RenyiParams& p);
[[nodiscard]] double log_euclidean_renyi(const HermitianOperator& rho, const HermitianOperator& sigma,
                                         double alpha);
// sigma-anchored: Tr[sigma (sigma^{-1/2} rho sigma^{-1/2})^alpha].
[[nodiscard]] double geometric_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha);
// rho-anchored: Tr[rho (rho^{-1/2} sigma rho^{-1/2})^{1-alpha}].
[[nodiscard]] double geometric_renyi_rho_anchored(const HermitianOperator& rho, const HermitianOperator& sigma,
                                                  double alpha);
[[nodiscard]] double belavkin_staszewski(const HermitianOperator& rho, const HermitianOperator& sigma);
[[nodiscard]] double petz_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha);
[[nodiscard]] double sandwiched_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha);

// Classical counterparts on interior-of-simplex vectors.
[[nodiscard]] double classical_renyi(const RealVector& p, const RealVector& q, double alpha);
[[nodiscard]] double classical_kl(const RealVector& p, const RealVector& q);

enum class DivergenceKind { umegaki, alpha_z, log_euclidean, geometric, belavkin_staszewski, petz, sandwiched };

// A divergence tagged with the normalization its information matrix uses.
class DivergenceSpec {
 public:
  static DivergenceSpec umegaki();
  static DivergenceSpec alpha_z(const RenyiParams& p);
  static DivergenceSpec log_euclidean(double alpha);
  static DivergenceSpec geometric(double alpha);
  static DivergenceSpec belavkin_staszewski();
  static DivergenceSpec petz(double alpha);
  static DivergenceSpec sandwiched(double alpha);

  [[nodiscard]] DivergenceKind kind() const noexcept { return kind_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double z() const noexcept { return z_; }
  // 1/alpha for the Renyi-type families, 1 for Umegaki and Belavkin-Staszewski.
  [[nodiscard]] double prefactor() const noexcept;
  [[nodiscard]] std::string label() const;
  [[nodiscard]] double operator()(const HermitianOperator& rho, const HermitianOperator& sigma) const;

 private:
  DivergenceSpec(DivergenceKind kind, double alpha, double z) : kind_(kind), alpha_(alpha), z_(z) {}
  DivergenceKind kind_;
  double alpha_;
  double z_;
};

class QuantumChannel {
 public:
  // Rejects Kraus sets with |sum K^dagger K - I| > 1e-10.
  explicit QuantumChannel(std::vector<Matrix> kraus_ops);

  [[nodiscard]] const std::vector<Matrix>& kraus_ops() const noexcept { return kraus_; }
  [[nodiscard]] Index input_dim() const { return kraus_.front().cols(); }
  [[nodiscard]] Index output_dim() const { return kraus_.front().rows(); }

 private:
  std::vector<Matrix> kraus_;
};

[[nodiscard]] HermitianOperator apply_channel(const QuantumChannel& channel, const HermitianOperator& x);

[[nodiscard]] QuantumChannel identity_channel(Index dim);
// rho -> (1-p) rho + p Tr[rho] I/d.
[[nodiscard]] QuantumChannel depolarizing_channel(Index dim, double p);
// Traces out the second factor of a (dim_keep x dim_drop) bipartite system.
[[nodiscard]] QuantumChannel partial_trace_channel(Index dim_keep, Index dim_drop);
// Random isometry split into `kraus_count` blocks.
[[nodiscard]] QuantumChannel random_channel(Index dim_in, Index dim_out, int kraus_count, std::mt19937_64& rng);

// theta -> N(rho(theta)); derivatives pushed through N by linearity.
[[nodiscard]] FamilyPtr pushforward_family(FamilyPtr family, QuantumChannel channel);

}  // namespace qfim
