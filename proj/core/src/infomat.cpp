#include "qfim/infomat.hpp"

#include "qfim/errors.hpp"
#include "qfim/quadrature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <sstream>

namespace qfim {

std::string to_string(InfoMethod method) {
  switch (method) {
    case InfoMethod::spectral: return "spectral";
    case InfoMethod::hessian_fd: return "hessian_fd";
    case InfoMethod::integral_rep: return "integral_rep";
    case InfoMethod::closed_form_thermal: return "closed_form_thermal";
    case InfoMethod::closed_form_time_evolved: return "closed_form_time_evolved";
    case InfoMethod::pure_state: return "pure_state";
    case InfoMethod::classical: return "classical";
  }
  return "unknown";
}

double InfoMatrix::asymmetry() const {
  if (values.size() == 0) return 0.0;
  return (values - values.transpose()).cwiseAbs().maxCoeff();
}

double InfoMatrix::min_eigenvalue() const {
  if (values.size() == 0) return 0.0;
  const RealMatrix sym = 0.5 * (values + values.transpose());
  return Eigen::SelfAdjointEigenSolver<RealMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

bool InfoMatrix::satisfies_invariants() const {
  const double scale = std::max(1.0, std::abs(values.trace()));
  return asymmetry() <= 1e-8 && min_eigenvalue() >= -1e-8 * scale;
}

double relative_deviation(const RealMatrix& a, const RealMatrix& b, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("relative_deviation: shape mismatch");
  if (a.size() == 0) return 0.0;
  const double scale = std::max(b.cwiseAbs().maxCoeff(), floor);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

namespace {

RealMatrix symmetrized(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

SpectralDecomposition positive_state_spectrum(const HermitianOperator& rho) {
  auto s = eig_hermitian(rho);
  if (!(s.min_eigenvalue() > 0.0)) {
    std::ostringstream msg;
    msg << "information matrix: state is not positive definite (min eigenvalue " << s.min_eigenvalue() << ")";
    throw DomainError(msg.str());
  }
  return s;
}

// sum_ab W(c(a), c(b)) T_i(a,b) T_j(b,a) with T = V^dagger (d rho) V and W indexed by cluster.
RealMatrix contract(const SpectralDecomposition& s, const std::vector<HermitianOperator>& tangents,
                    const RealMatrix& cluster_weights) {
  const Index d = s.dim();
  const auto& cl = s.cluster_of_column();
  RealMatrix w(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      w(a, b) = cluster_weights(static_cast<Index>(cl[static_cast<std::size_t>(a)]),
                                static_cast<Index>(cl[static_cast<std::size_t>(b)]));
    }
  }
  std::vector<Matrix> rotated;
  rotated.reserve(tangents.size());
  for (const auto& t : tangents) {
    if (t.dim() != d) throw ValidationError("information matrix: tangent dimension mismatch");
    rotated.push_back(s.to_eigenbasis(t.matrix()));
  }
  const auto n = static_cast<Index>(tangents.size());
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const auto& ti = rotated[static_cast<std::size_t>(i)];
      const auto& tj = rotated[static_cast<std::size_t>(j)];
      const double v = (w.cast<Complex>().array() * ti.array() * tj.transpose().array()).sum().real();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

RealMatrix kernel_weights(const SpectralDecomposition& s, const std::function<double(double, double)>& k) {
  const auto n = static_cast<Index>(s.cluster_count());
  RealMatrix w(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = a; b < n; ++b) {
      const double v = k(s.eigenvalues()[static_cast<std::size_t>(a)], s.eigenvalues()[static_cast<std::size_t>(b)]);
      w(a, b) = v;
      w(b, a) = v;
    }
  }
  return w;
}

InfoMatrix make_info(RealMatrix values, std::string kernel, std::string family, const RealVector& theta,
                     InfoMethod method) {
  return {symmetrized(values), std::move(kernel), std::move(family), theta, method};
}

// Central second differences of a scalar function g(eps) with g(0) = 0 and zero gradient.
RealMatrix second_differences(const std::function<double(const RealVector&)>& g, Index n, double h) {
  RealMatrix out(n, n);
  RealVector e = RealVector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    e.setZero();
    e(i) = h;
    out(i, i) = (g(e) + g(-e)) / (h * h);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      auto at = [&](double si, double sj) {
        RealVector v = RealVector::Zero(n);
        v(i) = si * h;
        v(j) = sj * h;
        return g(v);
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

void require_unit_interval(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << who << ": alpha must lie in (0,1) (got " << alpha << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

RealMatrix info_spectral_values(const HermitianOperator& rho, const std::vector<HermitianOperator>& tangents,
                                const ZetaKernel& kernel) {
  const auto s = positive_state_spectrum(rho);
  return contract(s, tangents, kernel_weights(s, [&kernel](double x, double y) { return kernel(x, y); }));
}

InfoMatrix info_spectral(const StateFamily& family, const RealVector& theta, const ZetaKernel& kernel) {
  const HermitianOperator rho = family.state(theta);
  return make_info(info_spectral_values(rho, family.derivatives(theta), kernel), kernel.name(), family.label(),
                   theta, InfoMethod::spectral);
}

double default_hessian_step(const RealVector& theta) {
  const double scale = theta.size() == 0 ? 0.0 : theta.cwiseAbs().maxCoeff();
  return 3e-4 * std::max(1.0, scale);
}

InfoMatrix info_hessian_oracle(const StateFamily& family, const RealVector& theta,
                               const DivergenceSpec& divergence, double h) {
  if (h <= 0.0) h = default_hessian_step(theta);
  const HermitianOperator rho = family.state(theta);
  auto g = [&](const RealVector& eps) { return divergence(rho, family.state(theta + eps)); };
  const RealMatrix hess = second_differences(g, static_cast<Index>(family.param_dim()), h);
  return make_info(divergence.prefactor() * hess, divergence.label(), family.label(), theta,
                   InfoMethod::hessian_fd);
}

RealVector divergence_gradient_fd(const StateFamily& family, const RealVector& theta,
                                  const DivergenceSpec& divergence, double h) {
  if (h <= 0.0) h = default_fd_step(theta);
  const HermitianOperator rho = family.state(theta);
  const auto n = static_cast<Index>(family.param_dim());
  RealVector grad(n);
  for (Index i = 0; i < n; ++i) {
    RealVector e = RealVector::Zero(n);
    e(i) = h;
    grad(i) = (divergence(rho, family.state(theta + e)) - divergence(rho, family.state(theta - e))) / (2.0 * h);
  }
  return grad;
}

InfoMatrix info_kubo_mori(const StateFamily& family, const RealVector& theta, KuboMoriPath path) {
  const HermitianOperator rho = family.state(theta);
  const auto tangents = family.derivatives(theta);
  const auto n = static_cast<Index>(tangents.size());
  RealMatrix out(n, n);
  switch (path) {
    case KuboMoriPath::divided_difference:
      out = info_spectral_values(rho, tangents, ZetaKernel::kubo_mori());
      break;
    case KuboMoriPath::log_derivative: {
      const auto s = positive_state_spectrum(rho);
      for (Index j = 0; j < n; ++j) {
        const HermitianOperator dlog = matrix_derivative(s, tangents[static_cast<std::size_t>(j)], functions::log());
        for (Index i = 0; i < n; ++i) out(i, j) = tangents[static_cast<std::size_t>(i)].trace_product(dlog);
      }
      break;
    }
    case KuboMoriPath::resolvent_integral: {
      positive_state_spectrum(rho);
      const Index d = rho.dim();
      const Matrix id = Matrix::Identity(d, d);
      const quad::Options opts{1e-15, 1e-11, 4000};
      for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
          const Matrix& di = tangents[static_cast<std::size_t>(i)].matrix();
          const Matrix& dj = tangents[static_cast<std::size_t>(j)].matrix();
          auto integrand = [&](double t) {
            const Eigen::LLT<Matrix> llt(rho.matrix() + t * id);
            const Matrix a = llt.solve(di);
            const Matrix b = llt.solve(dj);
            return (a * b).trace().real();
          };
          const auto r = quad::require_converged(quad::integrate_half_line(integrand, opts), "info_kubo_mori");
          out(i, j) = r.value;
          out(j, i) = r.value;
        }
      }
      break;
    }
  }
  return make_info(out, "kubo_mori", family.label(), theta, InfoMethod::spectral);
}

InfoMatrix info_rld(const StateFamily& family, const RealVector& theta) {
  const HermitianOperator rho = family.state(theta);
  const auto tangents = family.derivatives(theta);
  const Eigen::LLT<Matrix> llt(rho.matrix());
  if (llt.info() != Eigen::Success) throw DomainError("info_rld: state is not positive definite");
  const auto n = static_cast<Index>(tangents.size());
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Matrix& di = tangents[static_cast<std::size_t>(i)].matrix();
      const Matrix& dj = tangents[static_cast<std::size_t>(j)].matrix();
      const Matrix anti = di * dj + dj * di;
      const double v = 0.5 * llt.solve(anti).trace().real();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return make_info(out, "rld", family.label(), theta, InfoMethod::spectral);
}

InfoMatrix info_petz_integral(const StateFamily& family, const RealVector& theta, double alpha) {
  require_unit_interval(alpha, "info_petz_integral");
  const HermitianOperator rho = family.state(theta);
  const auto s = positive_state_spectrum(rho);
  // The double integral factorizes per eigenvalue pair into an s-integral with
  // exponent alpha and a t-integral with exponent 1-alpha.
  const RealMatrix w = kernel_weights(s, [alpha](double x, double y) {
    return power_difference_integral(x, y, alpha) * power_difference_integral(x, y, 1.0 - alpha) /
           (alpha * (1.0 - alpha));
  });
  std::ostringstream name;
  name << "petz(" << alpha << ")";
  return make_info(contract(s, family.derivatives(theta), w), name.str(), family.label(), theta,
                   InfoMethod::integral_rep);
}

InfoMatrix info_sandwiched_integral(const StateFamily& family, const RealVector& theta, double alpha) {
  require_unit_interval(alpha, "info_sandwiched_integral");
  const HermitianOperator rho = family.state(theta);
  const auto s = positive_state_spectrum(rho);
  // Resolvent of rho^{1/alpha}: the integral runs over the eigenvalues raised to 1/alpha.
  const RealMatrix w = kernel_weights(s, [alpha](double x, double y) {
    return power_difference_integral(std::pow(x, 1.0 / alpha), std::pow(y, 1.0 / alpha), 1.0 - alpha) /
           (1.0 - alpha);
  });
  std::ostringstream name;
  name << "sandwiched(" << alpha << ")";
  return make_info(contract(s, family.derivatives(theta), w), name.str(), family.label(), theta,
                   InfoMethod::integral_rep);
}

InfoMatrix info_sandwiched_two(const StateFamily& family, const RealVector& theta) {
  const HermitianOperator rho = family.state(theta);
  const auto s = positive_state_spectrum(rho);
  const Matrix inv_sqrt = matrix_power(s, -0.5).matrix();
  const auto tangents = family.derivatives(theta);
  const auto n = static_cast<Index>(tangents.size());
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = (inv_sqrt * tangents[static_cast<std::size_t>(i)].matrix() * inv_sqrt *
                   tangents[static_cast<std::size_t>(j)].matrix())
                      .trace()
                      .real();
    }
  }
  return make_info(out, "sandwiched(2)", family.label(), theta, InfoMethod::spectral);
}

InfoMatrix info_pure_state(const PureStateFamily& family, const RealVector& theta, const RenyiParams& p) {
  require_unit_interval(p.alpha(), "info_pure_state");
  const CVector psi = family.amplitude(theta);
  const Index d = psi.size();
  const Matrix complement = Matrix::Identity(d, d) - psi * psi.adjoint();
  const auto n = static_cast<Index>(family.param_dim());
  std::vector<CVector> tangents;
  for (Index i = 0; i < n; ++i) tangents.push_back(family.tangent(theta, static_cast<std::size_t>(i)));
  const double pref = 2.0 * p.z() / (p.alpha() * (1.0 - p.alpha()));
  RealMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = pref * (tangents[static_cast<std::size_t>(i)].adjoint() * complement *
                          tangents[static_cast<std::size_t>(j)])(0, 0)
                             .real();
    }
  }
  std::ostringstream name;
  name << "alpha_z(" << p.alpha() << "," << p.z() << ")";
  return make_info(out, name.str(), family.label(), theta, InfoMethod::pure_state);
}

InfoMatrix info_classical(const ProbabilityFamily& family, const RealVector& theta) {
  const RealVector p = family.probabilities(theta);
  const auto n = static_cast<Index>(family.param_dim());
  RealMatrix grads(p.size(), n);
  for (Index i = 0; i < n; ++i) grads.col(i) = family.derivative(theta, static_cast<std::size_t>(i));
  const RealMatrix scaled = p.cwiseInverse().asDiagonal() * grads;
  return make_info(grads.transpose() * scaled, "fisher", family.label(), theta, InfoMethod::classical);
}

InfoMatrix info_classical_hessian(const ProbabilityFamily& family, const RealVector& theta,
                                  ClassicalDivergence divergence, double alpha, double h) {
  if (h <= 0.0) h = default_hessian_step(theta);
  const RealVector p = family.probabilities(theta);
  auto g = [&](const RealVector& eps) {
    const RealVector q = family.probabilities(theta + eps);
    return divergence == ClassicalDivergence::kl ? classical_kl(p, q) : classical_renyi(p, q, alpha);
  };
  const double pref = divergence == ClassicalDivergence::kl ? 1.0 : 1.0 / alpha;
  std::ostringstream name;
  if (divergence == ClassicalDivergence::kl) {
    name << "kl";
  } else {
    name << "renyi(" << alpha << ")";
  }
  return make_info(pref * second_differences(g, static_cast<Index>(family.param_dim()), h), name.str(),
                   family.label(), theta, InfoMethod::hessian_fd);
}

InfoMatrix info_cq_decomposed(const ClassicalQuantumFamily& family, const RealVector& theta,
                              const ZetaKernel& kernel) {
  if (kernel.label() == KernelLabel::custom) {
    throw DomainError("info_cq_decomposed: decomposition holds for Kubo-Mori, RLD and alpha-z kernels only");
  }
  const RealVector p = family.weights().probabilities(theta);
  RealMatrix total = info_classical(family.weights(), theta).values;
  for (std::size_t x = 0; x < family.alphabet_size(); ++x) {
    total += p(static_cast<Index>(x)) * info_spectral(*family.branches()[x], theta, kernel).values;
  }
  return make_info(total, kernel.name(), "classical_quantum", theta, InfoMethod::spectral);
}

}  // namespace qfim
