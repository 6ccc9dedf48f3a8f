#pragma once

#include "qfim/divergences.hpp"

#include <functional>
#include <optional>
#include <string>

namespace qfim {

enum class KernelLabel { kubo_mori, rld, alpha_z, petz, sandwiched, custom };

[[nodiscard]] std::string to_string(KernelLabel label);

// Beyond these the alpha-z kernel is replaced by its Kubo-Mori limit.
inline constexpr double kAlphaNearOne = 1e-7;
inline constexpr double kLargeZ = 1e13;

// Scalar kernels. Arguments must be positive; near-diagonal pairs
// (|x-y| <= kClusterTolerance * max(x,y)) use the diagonal value at the midpoint.
[[nodiscard]] double zeta_kubo_mori(double x, double y);
[[nodiscard]] double zeta_rld(double x, double y);
// alpha in (0,1) u (1,inf), z > 0; the limits alpha -> 1 and z -> inf return Kubo-Mori.
[[nodiscard]] double zeta_alpha_z(double x, double y, double alpha, double z);
[[nodiscard]] double zeta_alpha_z(double x, double y, const RenyiParams& p);
[[nodiscard]] double zeta_petz(double x, double y, double alpha);
[[nodiscard]] double zeta_sandwiched(double x, double y, double alpha);

// f(x) = 1/zeta(x,1) for the Petz and sandwiched kernels; value 1 at x = 1.
[[nodiscard]] double mc_function_petz(double x, double alpha);
[[nodiscard]] double mc_function_sandwiched(double x, double alpha);
// 1/zeta_{alpha,z}(x,1), operator monotone inside the data-processing region.
[[nodiscard]] double operator_monotone_candidate(double x, const RenyiParams& p);

// zeta(x,y): symmetric, zeta(x,x) = kappa/x, zeta(sx,sy) = zeta(x,y)/s.
class ZetaKernel {
 public:
  using Fn = std::function<double(double, double)>;

  static ZetaKernel kubo_mori();
  static ZetaKernel rld();
  static ZetaKernel alpha_z(const RenyiParams& p);
  static ZetaKernel petz(double alpha);
  static ZetaKernel sandwiched(double alpha);
  static ZetaKernel custom(std::string name, Fn fn, double kappa);

  [[nodiscard]] double operator()(double x, double y) const { return fn_(x, y); }
  [[nodiscard]] double kappa() const noexcept { return kappa_; }
  [[nodiscard]] double f_of_t(double t) const { return 1.0 / fn_(t, 1.0); }
  [[nodiscard]] KernelLabel label() const noexcept { return label_; }
  [[nodiscard]] std::string name() const { return name_; }
  [[nodiscard]] std::optional<double> alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::optional<double> z() const noexcept { return z_; }

  // c * zeta, with kappa scaled accordingly.
  [[nodiscard]] ZetaKernel scaled(double c) const;

 private:
  ZetaKernel(KernelLabel label, std::string name, Fn fn, double kappa, std::optional<double> alpha,
             std::optional<double> z);

  KernelLabel label_;
  std::string name_;
  Fn fn_;
  double kappa_;
  std::optional<double> alpha_;
  std::optional<double> z_;
};

}  // namespace qfim
