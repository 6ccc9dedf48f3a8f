#include "qfim/structured.hpp"

#include "qfim/densities.hpp"
#include "qfim/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qfim {

namespace {

void require_closed_form_alpha(const RenyiParams& p, const char* who) {
  if (!(p.alpha() < 1.0)) {
    std::ostringstream msg;
    msg << who << ": closed form available for alpha in (0,1) only (got " << p.alpha()
        << "); use info_spectral for alpha > 1";
    throw DomainError(msg.str());
  }
}

std::string alpha_z_name(const RenyiParams& p) {
  std::ostringstream name;
  name << "alpha_z(" << p.alpha() << "," << p.z() << ")";
  return name.str();
}

}  // namespace

HermitianOperator apply_spectral_channel(const SpectralChannel& channel, const HermitianOperator& x) {
  if (x.dim() != channel.basis.dim()) throw ValidationError("apply_spectral_channel: dimension mismatch");
  const auto& w = channel.weight;
  return HermitianOperator(
      spectral_map(channel.basis, x.matrix(), [&w](double mk, double ml) { return Complex(w(mk - ml), 0.0); }),
      HermitianPolicy::symmetrize);
}

HermitianOperator apply_spectral_map(const SpectralMap& map, const HermitianOperator& x) {
  if (x.dim() != map.basis.dim()) throw ValidationError("apply_spectral_map: dimension mismatch");
  const auto& c = map.coefficient;
  return HermitianOperator(spectral_map(map.basis, x.matrix(), [&c](double nk, double nl) { return c(nk - nl); }),
                           HermitianPolicy::symmetrize);
}

SpectralMap psi_phi_channel(const TimeEvolvedFamily& family, const RealVector& phi) {
  return {eig_hermitian(family.hamiltonian(phi)), phase_average};
}

InfoMatrix thermal_info_with_weight(const ThermalFamily& family, const RealVector& theta,
                                    const std::function<double(double)>& weight, double kappa,
                                    std::string kernel_name) {
  const HermitianOperator rho = family.state(theta);
  const SpectralChannel channel{eig_hermitian(family.hamiltonian(theta)), weight};
  const auto& gens = family.generators();
  const auto n = static_cast<Index>(gens.size());
  std::vector<HermitianOperator> smeared;
  std::vector<double> means;
  for (const auto& h : gens) {
    smeared.push_back(apply_spectral_channel(channel, h));
    means.push_back(expectation(rho, h));
  }
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const Matrix& phi_i = smeared[ui].matrix();
      const Matrix& hj = gens[uj].matrix();
      const double anti = (rho.matrix() * (phi_i * hj + hj * phi_i)).trace().real();
      out(i, j) = 0.5 * anti - kappa * means[ui] * means[uj];
    }
  }
  return {0.5 * (out + out.transpose()), std::move(kernel_name), family.label(), theta,
          InfoMethod::closed_form_thermal};
}

InfoMatrix thermal_info_general_kernel(const ThermalFamily& family, const RealVector& theta,
                                       const ZetaKernel& kernel) {
  return thermal_info_with_weight(
      family, theta, [&kernel](double w) { return thermal_weight(w, kernel); }, kernel.kappa(), kernel.name());
}

InfoMatrix thermal_info_closed(const ThermalFamily& family, const RealVector& theta, const RenyiParams& p) {
  require_closed_form_alpha(p, "thermal_info_closed");
  auto weight = [p](double w) {
    const double h = 0.5 * std::abs(w);
    const double tanh_ratio = h < 1e-8 ? 1.0 : std::tanh(h) / h;
    return char_fn_alpha_z(w, p) * tanh_ratio;
  };
  return thermal_info_with_weight(family, theta, weight, 1.0, alpha_z_name(p));
}

InfoMatrix time_evolved_info_with_weight(const TimeEvolvedFamily& family, const RealVector& phi,
                                         const std::function<double(double)>& weight, std::string kernel_name) {
  (void)family.state(phi);  // floor and trace validation of sigma(phi)
  const HermitianOperator& rho = family.base_state();
  const HermitianOperator& g = family.base_generator();
  const SpectralMap psi = psi_phi_channel(family, phi);
  const SpectralChannel channel{eig_hermitian(g), weight};

  const auto& gens = family.generators();
  const auto n = static_cast<Index>(gens.size());
  std::vector<Matrix> smeared;  // Phi(Psi(H_i))
  std::vector<Matrix> commuted;  // [G, Psi(H_j)]
  for (const auto& h : gens) {
    const HermitianOperator ph = apply_spectral_map(psi, h);
    smeared.push_back(apply_spectral_channel(channel, ph).matrix());
    commuted.push_back(g.matrix() * ph.matrix() - ph.matrix() * g.matrix());
  }
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix& a = smeared[static_cast<std::size_t>(i)];
      const Matrix& c = commuted[static_cast<std::size_t>(j)];
      const Complex v = (rho.matrix() * (a * c - c * a)).trace();
      if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
        std::ostringstream msg;
        msg << "time_evolved_info: imaginary residue " << v.imag() << " at (" << i << "," << j << ")";
        throw NumericError(msg.str());
      }
      out(i, j) = v.real();
    }
  }
  return {0.5 * (out + out.transpose()), std::move(kernel_name), family.label(), phi,
          InfoMethod::closed_form_time_evolved};
}

InfoMatrix time_evolved_info_general_kernel(const TimeEvolvedFamily& family, const RealVector& phi,
                                            const ZetaKernel& kernel) {
  return time_evolved_info_with_weight(
      family, phi, [&kernel](double w) { return time_evolved_weight(w, kernel); }, kernel.name());
}

InfoMatrix time_evolved_info_closed(const TimeEvolvedFamily& family, const RealVector& phi, const RenyiParams& p) {
  require_closed_form_alpha(p, "time_evolved_info_closed");
  return time_evolved_info_with_weight(
      family, phi, [p](double w) { return char_fn_alpha_z(w, p); }, alpha_z_name(p));
}

}  // namespace qfim
