#pragma once

#include "qfim/divergences.hpp"
#include "qfim/kernels.hpp"
#include "qfim/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qfim {

// (2/pi) ln coth(pi |t| / 2). t != 0.
[[nodiscard]] double high_peak_tent(double t);

// z/(2 pi alpha (1-alpha)) ln(1 + (sin(pi alpha)/sinh(pi z t))^2). alpha in (0,1), t != 0.
[[nodiscard]] double alpha_z_tent(double t, const RenyiParams& p);
// Same density through ln(coth^2(pi z t) - (cos(pi alpha)/sinh(pi z t))^2).
[[nodiscard]] double alpha_z_tent_coth_form(double t, const RenyiParams& p);

// Threshold below which char_fn_alpha_z switches to its quadratic series.
inline constexpr double kCharFnSeriesCutoff = 1e-6;

// f(w) = z (1 - e^{-a w})(1 - e^{-b w}) / (alpha (1-alpha) w (1 - e^{-w/z})),
// a = (1-alpha)/z, b = alpha/z. Even in w, f(0) = 1.
[[nodiscard]] double char_fn_alpha_z(double omega, const RenyiParams& p);

// 2 zeta(e^{-w},1)(e^{-w}-1)^2 / (w^2 (e^{-w}+1)); kappa at w = 0.
[[nodiscard]] double thermal_weight(double omega, const ZetaKernel& kernel);
// zeta(e^{-w},1)(1 - e^{-w}) / w; kappa at w = 0.
[[nodiscard]] double time_evolved_weight(double omega, const ZetaKernel& kernel);

enum class DensityLabel { high_peak_tent, alpha_z_tent, convolved };

[[nodiscard]] std::string to_string(DensityLabel label);

// Even probability density on the real line together with its closed-form
// characteristic function. Singularities, if any, are logarithmic and sit at t = 0.
struct DensitySpec {
  DensityLabel label = DensityLabel::high_peak_tent;
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> char_fn;
  // Half-width beyond which the mass is below 1e-8.
  double window = 10.0;
};

[[nodiscard]] DensitySpec high_peak_tent_density();
[[nodiscard]] DensitySpec alpha_z_tent_density(const RenyiParams& p);
// q = p * p_{alpha,z}, evaluated pointwise by quadrature. Slow; for validation.
[[nodiscard]] DensitySpec convolved_density(const RenyiParams& p);

// max(10, 10/z).
[[nodiscard]] double default_window(const RenyiParams& p);

// Width of the log-substitution region around each singular point.
inline constexpr double kSingularSplit = 1e-2;

// int f over [-window, window] where f may carry integrable log singularities at
// `breakpoints` (sorted internally). Throws NumericError on non-convergence.
[[nodiscard]] double integrate_with_log_singularities(const std::function<double(double)>& f,
                                                      std::vector<double> breakpoints, double window,
                                                      const quad::Options& opts = {});

[[nodiscard]] double integrate_density(const DensitySpec& density, const quad::Options& opts = {});

struct FourierValue {
  double re = 0.0;
  double im = 0.0;
};

// int density(t) e^{i w t} dt over [-window, window]; window <= 0 uses density.window.
[[nodiscard]] FourierValue numeric_fourier(const DensitySpec& density, double omega, double window = 0.0,
                                           const quad::Options& opts = {});

// q_{alpha,z}(t) = int p(tau) p_{alpha,z}(t - tau) d tau at one point.
[[nodiscard]] double convolved_tent(double t, const RenyiParams& p);
[[nodiscard]] std::vector<double> convolve_densities(const RenyiParams& p, const std::vector<double>& t_grid);

}  // namespace qfim
