#include "qfim/kernels.hpp"

#include "qfim/errors.hpp"

#include <cmath>
#include <sstream>

namespace qfim {

std::string to_string(KernelLabel label) {
  switch (label) {
    case KernelLabel::kubo_mori: return "kubo_mori";
    case KernelLabel::rld: return "rld";
    case KernelLabel::alpha_z: return "alpha_z";
    case KernelLabel::petz: return "petz";
    case KernelLabel::sandwiched: return "sandwiched";
    case KernelLabel::custom: return "custom";
  }
  return "unknown";
}

namespace {

void require_positive_args(double x, double y, const char* who) {
  if (!(x > 0.0) || !(y > 0.0)) {
    std::ostringstream msg;
    msg << who << ": arguments must be positive (got " << x << ", " << y << ")";
    throw DomainError(msg.str());
  }
}

// Every kernel is (1/hi) g(u) with hi = max(x,y), u = ln(min/max) <= 0.
struct Ratio {
  double hi;
  double u;
  double gap;  // hi - lo, exact
  bool diagonal;
};

Ratio ratio_of(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  const double gap = hi - lo;
  return {hi, std::log1p(-gap / hi), gap, gap <= kClusterTolerance * hi};
}

double diagonal_value(double x, double y) { return 2.0 / (x + y); }

// ln|expm1(v)| without overflow.
double log_abs_expm1(double v) {
  if (v > 0.0) return v + std::log1p(-std::exp(-v));
  return std::log(-std::expm1(v));
}

// prod expm1(num_i * u) / prod expm1(den_j * u), all arguments nonzero.
double expm1_ratio(std::initializer_list<double> num, std::initializer_list<double> den, double u) {
  bool large = false;
  for (double c : num) large = large || std::abs(c * u) > 40.0;
  for (double c : den) large = large || std::abs(c * u) > 40.0;
  if (!large) {
    double r = 1.0;
    for (double c : num) r *= std::expm1(c * u);
    for (double c : den) r /= std::expm1(c * u);
    return r;
  }
  double log_r = 0.0;
  int sign = 1;
  for (double c : num) {
    log_r += log_abs_expm1(c * u);
    sign *= (c * u > 0.0) ? 1 : -1;
  }
  for (double c : den) {
    log_r -= log_abs_expm1(c * u);
    sign *= (c * u > 0.0) ? 1 : -1;
  }
  return sign * std::exp(log_r);
}

}  // namespace

double zeta_kubo_mori(double x, double y) {
  require_positive_args(x, y, "zeta_kubo_mori");
  const Ratio r = ratio_of(x, y);
  if (r.diagonal) return diagonal_value(x, y);
  return -r.u / r.gap;
}

double zeta_rld(double x, double y) {
  require_positive_args(x, y, "zeta_rld");
  return 0.5 * (1.0 / x + 1.0 / y);
}

double zeta_alpha_z(double x, double y, double alpha, double z) {
  require_positive_args(x, y, "zeta_alpha_z");
  if (!(alpha > 0.0) || !(z > 0.0)) throw DomainError("zeta_alpha_z: alpha and z must be positive");
  if (std::abs(alpha - 1.0) < kAlphaNearOne || z > kLargeZ) return zeta_kubo_mori(x, y);
  const Ratio r = ratio_of(x, y);
  if (r.diagonal) return diagonal_value(x, y);
  const double a = (1.0 - alpha) / z;
  const double b = alpha / z;
  const double pref = z / (alpha * (1.0 - alpha));
  return pref * expm1_ratio({a, b}, {1.0, 1.0 / z}, r.u) / r.hi;
}

double zeta_alpha_z(double x, double y, const RenyiParams& p) { return zeta_alpha_z(x, y, p.alpha(), p.z()); }

double zeta_petz(double x, double y, double alpha) {
  require_positive_args(x, y, "zeta_petz");
  if (!(alpha > 0.0)) throw DomainError("zeta_petz: alpha must be positive");
  if (std::abs(alpha - 1.0) < kAlphaNearOne) return zeta_kubo_mori(x, y);
  const Ratio r = ratio_of(x, y);
  if (r.diagonal) return diagonal_value(x, y);
  return expm1_ratio({alpha, 1.0 - alpha}, {1.0, 1.0}, r.u) / (alpha * (1.0 - alpha) * r.hi);
}

double zeta_sandwiched(double x, double y, double alpha) {
  require_positive_args(x, y, "zeta_sandwiched");
  if (!(alpha > 0.0)) throw DomainError("zeta_sandwiched: alpha must be positive");
  if (std::abs(alpha - 1.0) < kAlphaNearOne) return zeta_kubo_mori(x, y);
  const Ratio r = ratio_of(x, y);
  if (r.diagonal) return diagonal_value(x, y);
  return expm1_ratio({(1.0 - alpha) / alpha}, {1.0 / alpha}, r.u) / ((1.0 - alpha) * r.hi);
}

double mc_function_petz(double x, double alpha) { return 1.0 / zeta_petz(x, 1.0, alpha); }

double mc_function_sandwiched(double x, double alpha) { return 1.0 / zeta_sandwiched(x, 1.0, alpha); }

double operator_monotone_candidate(double x, const RenyiParams& p) {
  return 1.0 / zeta_alpha_z(x, 1.0, p.alpha(), p.z());
}

// --------------------------------------------------------------- ZetaKernel

ZetaKernel::ZetaKernel(KernelLabel label, std::string name, Fn fn, double kappa, std::optional<double> alpha,
                       std::optional<double> z)
    : label_(label), name_(std::move(name)), fn_(std::move(fn)), kappa_(kappa), alpha_(alpha), z_(z) {}

ZetaKernel ZetaKernel::kubo_mori() {
  return {KernelLabel::kubo_mori, "kubo_mori", zeta_kubo_mori, 1.0, std::nullopt, std::nullopt};
}

ZetaKernel ZetaKernel::rld() { return {KernelLabel::rld, "rld", zeta_rld, 1.0, std::nullopt, std::nullopt}; }

ZetaKernel ZetaKernel::alpha_z(const RenyiParams& p) {
  std::ostringstream name;
  name << "alpha_z(" << p.alpha() << "," << p.z() << ")";
  const double a = p.alpha();
  const double z = p.z();
  return {KernelLabel::alpha_z, name.str(), [a, z](double x, double y) { return zeta_alpha_z(x, y, a, z); }, 1.0,
          a, z};
}

ZetaKernel ZetaKernel::petz(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("ZetaKernel::petz: alpha must be positive");
  std::ostringstream name;
  name << "petz(" << alpha << ")";
  return {KernelLabel::petz, name.str(), [alpha](double x, double y) { return zeta_petz(x, y, alpha); }, 1.0,
          alpha, 1.0};
}

ZetaKernel ZetaKernel::sandwiched(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("ZetaKernel::sandwiched: alpha must be positive");
  std::ostringstream name;
  name << "sandwiched(" << alpha << ")";
  return {KernelLabel::sandwiched, name.str(),
          [alpha](double x, double y) { return zeta_sandwiched(x, y, alpha); }, 1.0, alpha, alpha};
}

ZetaKernel ZetaKernel::custom(std::string name, Fn fn, double kappa) {
  return {KernelLabel::custom, std::move(name), std::move(fn), kappa, std::nullopt, std::nullopt};
}

ZetaKernel ZetaKernel::scaled(double c) const {
  ZetaKernel out = *this;
  Fn base = fn_;
  out.fn_ = [base, c](double x, double y) { return c * base(x, y); };
  out.kappa_ = c * kappa_;
  std::ostringstream name;
  name << c << "*" << name_;
  out.name_ = name.str();
  out.label_ = KernelLabel::custom;
  return out;
}

}  // namespace qfim
