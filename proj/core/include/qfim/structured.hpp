#pragma once

#include "qfim/families.hpp"
#include "qfim/infomat.hpp"
#include "qfim/kernels.hpp"

#include <functional>
#include <string>

namespace qfim {

// X -> sum_{k,l} weight(mu_k - mu_l) P_k X P_l over the spectrum of a conditioning
// Hamiltonian. An even weight keeps Hermitian inputs Hermitian.
struct SpectralChannel {
  SpectralDecomposition basis;
  std::function<double(double)> weight;
};

[[nodiscard]] HermitianOperator apply_spectral_channel(const SpectralChannel& channel, const HermitianOperator& x);

// Complex-weighted version. Hermitian inputs stay Hermitian when
// coefficient(-w) = conj(coefficient(w)).
struct SpectralMap {
  SpectralDecomposition basis;
  std::function<Complex(double)> coefficient;
};

[[nodiscard]] HermitianOperator apply_spectral_map(const SpectralMap& map, const HermitianOperator& x);

// Psi(X) = int_0^1 e^{iHt} X e^{-iHt} dt with H = H(phi); coefficient (e^{i nu} - 1)/(i nu).
[[nodiscard]] SpectralMap psi_phi_channel(const TimeEvolvedFamily& family, const RealVector& phi);

// 1/2 <{Phi(H_i), H_j}> - kappa <H_i><H_j> in rho(theta), Phi weighted by `weight`
// over the spectrum of H(theta).
[[nodiscard]] InfoMatrix thermal_info_with_weight(const ThermalFamily& family, const RealVector& theta,
                                                  const std::function<double(double)>& weight, double kappa,
                                                  std::string kernel_name);

// Weight thermal_weight(., kernel).
[[nodiscard]] InfoMatrix thermal_info_general_kernel(const ThermalFamily& family, const RealVector& theta,
                                                     const ZetaKernel& kernel);

// Weight f_{alpha,z}(w) tanh(w/2)/(w/2). alpha in (0,1); DomainError otherwise.
[[nodiscard]] InfoMatrix thermal_info_closed(const ThermalFamily& family, const RealVector& theta,
                                             const RenyiParams& p);

// Re <[Phi(Psi(H_i)), [G, Psi(H_j)]]> in the base state e^{-G}/Z, symmetrized, with Phi
// weighted over the spectrum of G. Throws NumericError if an imaginary residue above
// 1e-10 * max(1, |value|) appears.
[[nodiscard]] InfoMatrix time_evolved_info_with_weight(const TimeEvolvedFamily& family, const RealVector& phi,
                                                       const std::function<double(double)>& weight,
                                                       std::string kernel_name);

// Weight time_evolved_weight(., kernel); Kubo-Mori gives weight 1.
[[nodiscard]] InfoMatrix time_evolved_info_general_kernel(const TimeEvolvedFamily& family, const RealVector& phi,
                                                          const ZetaKernel& kernel);

// Weight f_{alpha,z}. alpha in (0,1); DomainError otherwise.
[[nodiscard]] InfoMatrix time_evolved_info_closed(const TimeEvolvedFamily& family, const RealVector& phi,
                                                  const RenyiParams& p);

}  // namespace qfim
