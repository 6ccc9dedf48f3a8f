#include "qfim/densities.hpp"

#include "qfim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfim {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero(double t, const char* who) {
  if (t == 0.0) {
    std::ostringstream msg;
    msg << who << ": density has a log singularity at t = 0";
    throw DomainError(msg.str());
  }
}

void require_unit_alpha(const RenyiParams& p, const char* who) {
  if (!(p.alpha() > 0.0 && p.alpha() < 1.0)) {
    std::ostringstream msg;
    msg << who << ": alpha must lie in (0,1) (got " << p.alpha() << ")";
    throw DomainError(msg.str());
  }
}

// ln coth(x) for x > 0.
double log_coth(double x) {
  if (x < 1e-3) return -std::log(x) + x * x / 3.0;
  return 2.0 * std::atanh(std::exp(-2.0 * x));
}

// tanh(w/2)/(w/2), 1 at w = 0.
double tanh_ratio(double omega) {
  const double h = 0.5 * std::abs(omega);
  if (h < 1e-8) return 1.0;
  return std::tanh(h) / h;
}

}  // namespace

double high_peak_tent(double t) {
  require_nonzero(t, "high_peak_tent");
  return (2.0 / kPi) * log_coth(0.5 * kPi * std::abs(t));
}

double alpha_z_tent(double t, const RenyiParams& p) {
  require_nonzero(t, "alpha_z_tent");
  require_unit_alpha(p, "alpha_z_tent");
  const double alpha = p.alpha();
  const double z = p.z();
  const double s = std::sin(kPi * alpha);
  const double x = kPi * z * std::abs(t);
  const double pref = z / (2.0 * kPi * alpha * (1.0 - alpha));
  const double sh = std::sinh(x);
  if (sh >= s) {
    const double r = s / sh;
    return pref * std::log1p(r * r);
  }
  // Small t: factor out the dominant (sin/sinh)^2 to avoid overflow.
  const double r = sh / s;
  return pref * (2.0 * std::log(s) - 2.0 * std::log(sh) + std::log1p(r * r));
}

double alpha_z_tent_coth_form(double t, const RenyiParams& p) {
  require_nonzero(t, "alpha_z_tent_coth_form");
  require_unit_alpha(p, "alpha_z_tent_coth_form");
  const double alpha = p.alpha();
  const double z = p.z();
  const double x = kPi * z * std::abs(t);
  const double coth = 1.0 / std::tanh(x);
  const double c = std::cos(kPi * alpha) / std::sinh(x);
  return z / (2.0 * kPi * alpha * (1.0 - alpha)) * std::log(coth * coth - c * c);
}

double char_fn_alpha_z(double omega, const RenyiParams& p) {
  const double alpha = p.alpha();
  const double z = p.z();
  const double a = (1.0 - alpha) / z;
  const double b = alpha / z;
  const double w = std::abs(omega);
  if (w < kCharFnSeriesCutoff) return 1.0 - a * b * w * w / 12.0;
  return z * std::expm1(-a * w) * std::expm1(-b * w) / (alpha * (1.0 - alpha) * w * -std::expm1(-w / z));
}

double thermal_weight(double omega, const ZetaKernel& kernel) {
  const double w = std::abs(omega);
  if (w == 0.0) return kernel.kappa();
  if (w > 700.0) throw DomainError("thermal_weight: |omega| > 700 underflows e^{-omega}");
  const double x = std::exp(-w);
  const double em = std::expm1(-w);
  return 2.0 * kernel(x, 1.0) * em * em / (w * w * (x + 1.0));
}

double time_evolved_weight(double omega, const ZetaKernel& kernel) {
  const double w = std::abs(omega);
  if (w == 0.0) return kernel.kappa();
  if (w > 700.0) throw DomainError("time_evolved_weight: |omega| > 700 underflows e^{-omega}");
  return kernel(std::exp(-w), 1.0) * -std::expm1(-w) / w;
}

std::string to_string(DensityLabel label) {
  switch (label) {
    case DensityLabel::high_peak_tent: return "high_peak_tent";
    case DensityLabel::alpha_z_tent: return "alpha_z_tent";
    case DensityLabel::convolved: return "convolved";
  }
  return "unknown";
}

double default_window(const RenyiParams& p) { return std::max(10.0, 10.0 / p.z()); }

DensitySpec high_peak_tent_density() {
  return {DensityLabel::high_peak_tent, "high_peak_tent", high_peak_tent, tanh_ratio, 10.0};
}

DensitySpec alpha_z_tent_density(const RenyiParams& p) {
  require_unit_alpha(p, "alpha_z_tent_density");
  std::ostringstream name;
  name << "alpha_z_tent(" << p.alpha() << "," << p.z() << ")";
  return {DensityLabel::alpha_z_tent, name.str(), [p](double t) { return alpha_z_tent(t, p); },
          [p](double w) { return char_fn_alpha_z(w, p); }, default_window(p)};
}

DensitySpec convolved_density(const RenyiParams& p) {
  require_unit_alpha(p, "convolved_density");
  std::ostringstream name;
  name << "convolved(" << p.alpha() << "," << p.z() << ")";
  return {DensityLabel::convolved, name.str(), [p](double t) { return convolved_tent(t, p); },
          [p](double w) { return char_fn_alpha_z(w, p) * tanh_ratio(w); }, default_window(p)};
}

double integrate_with_log_singularities(const std::function<double(double)>& f, std::vector<double> breakpoints,
                                        double window, const quad::Options& opts) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                [](double u, double v) { return std::abs(u - v) <= 1e-14 * std::max(1.0, std::abs(u)); }),
                    breakpoints.end());
  std::vector<double> nodes{-window};
  for (double b : breakpoints) {
    if (b > -window && b < window) nodes.push_back(b);
  }
  nodes.push_back(window);
  auto is_singular = [&breakpoints](double x) {
    return std::find(breakpoints.begin(), breakpoints.end(), x) != breakpoints.end();
  };

  double total = 0.0;
  auto accumulate = [&total](const quad::Result& r) {
    quad::require_converged(r, "integrate_with_log_singularities");
    total += r.value;
  };
  // Offsets w from a singular point s; f is never evaluated exactly at s.
  auto from_left = [&f](double s) {
    return [&f, s](double w) {
      const double x = s + w;
      return x == s ? 0.0 : f(x);
    };
  };
  auto from_right = [&f](double s) {
    return [&f, s](double w) {
      const double x = s - w;
      return x == s ? 0.0 : f(x);
    };
  };

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    double a = nodes[k];
    double b = nodes[k + 1];
    const double half = 0.5 * (b - a);
    if (is_singular(a)) {
      const double len = std::min(kSingularSplit, half);
      accumulate(quad::integrate_log_singular_left(from_left(a), 0.0, len, opts));
      a += len;
    }
    if (is_singular(b)) {
      const double len = std::min(kSingularSplit, half);
      accumulate(quad::integrate_log_singular_left(from_right(b), 0.0, len, opts));
      b -= len;
    }
    if (b > a) accumulate(quad::integrate(f, a, b, opts));
  }
  return total;
}

double integrate_density(const DensitySpec& density, const quad::Options& opts) {
  return integrate_with_log_singularities(density.eval, {0.0}, density.window, opts);
}

FourierValue numeric_fourier(const DensitySpec& density, double omega, double window, const quad::Options& opts) {
  if (window <= 0.0) window = density.window;
  const auto& p = density.eval;
  const double re =
      integrate_with_log_singularities([&p, omega](double t) { return p(t) * std::cos(omega * t); }, {0.0}, window, opts);
  const double im =
      integrate_with_log_singularities([&p, omega](double t) { return p(t) * std::sin(omega * t); }, {0.0}, window, opts);
  return {re, im};
}

double convolved_tent(double t, const RenyiParams& p) {
  require_unit_alpha(p, "convolved_tent");
  const quad::Options inner{1e-12, 1e-11, 4000};
  const double window = std::abs(t) + default_window(p);
  auto integrand = [t, &p](double tau) {
    const double shifted = t - tau;
    if (tau == 0.0 || shifted == 0.0) return 0.0;
    return high_peak_tent(tau) * alpha_z_tent(shifted, p);
  };
  return integrate_with_log_singularities(integrand, {0.0, t}, window, inner);
}

std::vector<double> convolve_densities(const RenyiParams& p, const std::vector<double>& t_grid) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(convolved_tent(t, p));
  return out;
}

}  // namespace qfim
