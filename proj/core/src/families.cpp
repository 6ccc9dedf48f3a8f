#include "qfim/families.hpp"

#include "qfim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfim {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::explicit_state: return "explicit";
    case FamilyKind::thermal: return "thermal";
    case FamilyKind::time_evolved: return "time_evolved";
    case FamilyKind::pure: return "pure";
    case FamilyKind::classical_quantum: return "classical_quantum";
  }
  return "unknown";
}

double default_fd_step(const RealVector& theta) {
  const double scale = theta.size() == 0 ? 0.0 : theta.cwiseAbs().maxCoeff();
  return 1e-5 * std::max(1.0, scale);
}

void validate_state(const HermitianOperator& rho, double floor, const std::string& context) {
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << context << ": trace " << tr << " differs from 1";
    throw ValidationError(msg.str());
  }
  const double min_eig = eig_hermitian(rho).raw_values()(0);
  // Relative slack so a state sitting exactly on the floor is accepted.
  if (min_eig < floor * (1.0 - 1e-9) - 1e-15) {
    std::ostringstream msg;
    msg << context << ": minimum eigenvalue " << min_eig << " below floor " << floor
        << "; the state is rejected rather than regularized";
    throw ValidationError(msg.str());
  }
}

void StateFamily::check_theta(const RealVector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != param_dim()) {
    std::ostringstream msg;
    msg << label() << ": expected " << param_dim() << " parameters, got " << theta.size();
    throw ValidationError(msg.str());
  }
}

HermitianOperator StateFamily::derivative(const RealVector& theta, std::size_t i) const {
  return family_derivative_fd(*this, theta, i);
}

HermitianOperator StateFamily::state(const RealVector& theta) const {
  check_theta(theta);
  HermitianOperator rho = evaluate(theta);
  validate_state(rho, floor_, label());
  return rho;
}

std::vector<HermitianOperator> StateFamily::derivatives(const RealVector& theta) const {
  check_theta(theta);
  std::vector<HermitianOperator> out;
  out.reserve(param_dim());
  for (std::size_t i = 0; i < param_dim(); ++i) out.push_back(derivative(theta, i));
  return out;
}

HermitianOperator family_derivative_fd(const StateFamily& family, const RealVector& theta, std::size_t i,
                                       double h) {
  if (i >= family.param_dim()) throw ValidationError("family_derivative_fd: parameter index out of range");
  if (h <= 0.0) h = default_fd_step(theta);
  RealVector plus = theta;
  RealVector minus = theta;
  plus(static_cast<Index>(i)) += h;
  minus(static_cast<Index>(i)) -= h;
  const HermitianOperator up = family.state(plus);
  const HermitianOperator down = family.state(minus);
  return HermitianOperator(Matrix((up.matrix() - down.matrix()) / (2.0 * h)), HermitianPolicy::symmetrize);
}

ExplicitFamily::ExplicitFamily(std::string label, Index dim, std::size_t param_dim, Evaluator evaluator,
                               Differentiator differentiator, double min_eig_floor, FamilyKind kind)
    : StateFamily(min_eig_floor),
      label_(std::move(label)),
      dim_(dim),
      param_dim_(param_dim),
      evaluator_(std::move(evaluator)),
      differentiator_(std::move(differentiator)),
      kind_(kind) {
  if (!evaluator_) throw ValidationError("ExplicitFamily: missing evaluator");
}

HermitianOperator ExplicitFamily::evaluate(const RealVector& theta) const {
  HermitianOperator rho = evaluator_(theta);
  if (rho.dim() != dim_) throw ValidationError(label_ + ": evaluator returned wrong dimension");
  return rho;
}

HermitianOperator ExplicitFamily::derivative(const RealVector& theta, std::size_t i) const {
  if (differentiator_) return differentiator_(theta, i);
  return family_derivative_fd(*this, theta, i);
}

FamilyPtr affine_family(HermitianOperator base, std::vector<HermitianOperator> directions, std::string label,
                        double min_eig_floor) {
  const Index d = base.dim();
  for (const auto& dir : directions) {
    if (dir.dim() != d) throw ValidationError("affine_family: direction dimension mismatch");
  }
  const std::size_t n = directions.size();
  auto eval = [base, directions](const RealVector& theta) {
    HermitianOperator rho = base;
    for (std::size_t j = 0; j < directions.size(); ++j) rho += theta(static_cast<Index>(j)) * directions[j];
    return rho;
  };
  auto diff = [directions](const RealVector&, std::size_t i) { return directions.at(i); };
  return std::make_shared<ExplicitFamily>(std::move(label), d, n, eval, diff, min_eig_floor);
}

// ---------------------------------------------------------------- thermal

HermitianOperator gibbs_state(const HermitianOperator& hamiltonian) {
  const auto s = eig_hermitian(hamiltonian);
  const RealVector& mu = s.raw_values();
  const RealVector w = (-(mu.array() - mu(0))).exp().matrix();
  const RealVector p = w / w.sum();
  return HermitianOperator(Matrix(s.basis() * p.cast<Complex>().asDiagonal() * s.basis().adjoint()),
                           HermitianPolicy::symmetrize);
}

double expectation(const HermitianOperator& rho, const HermitianOperator& x) { return rho.trace_product(x); }

ThermalFamily::ThermalFamily(std::vector<HermitianOperator> generators, std::optional<HermitianOperator> bias,
                             double min_eig_floor)
    : StateFamily(min_eig_floor), generators_(std::move(generators)) {
  if (generators_.empty() && !bias) throw ValidationError("ThermalFamily: no generators");
  const Index d = bias ? bias->dim() : generators_.front().dim();
  bias_ = bias ? *bias : HermitianOperator::zero(d);
  for (const auto& g : generators_) {
    if (g.dim() != d) throw ValidationError("ThermalFamily: generator dimension mismatch");
  }
}

HermitianOperator ThermalFamily::hamiltonian(const RealVector& theta) const {
  check_theta(theta);
  HermitianOperator h = bias_;
  for (std::size_t j = 0; j < generators_.size(); ++j) h += theta(static_cast<Index>(j)) * generators_[j];
  return h;
}

HermitianOperator ThermalFamily::evaluate(const RealVector& theta) const { return thermal_state(*this, theta); }

HermitianOperator ThermalFamily::derivative(const RealVector& theta, std::size_t i) const {
  return thermal_state_derivative(*this, theta, i);
}

HermitianOperator thermal_state(const ThermalFamily& family, const RealVector& theta) {
  return gibbs_state(family.hamiltonian(theta));
}

HermitianOperator thermal_state_derivative(const ThermalFamily& family, const RealVector& theta,
                                           std::size_t i) {
  if (i >= family.param_dim()) throw ValidationError("thermal_state_derivative: index out of range");
  const auto s = eig_hermitian(family.hamiltonian(theta));
  const double shift = s.min_eigenvalue();
  double z = 0.0;
  for (Index a = 0; a < s.raw_values().size(); ++a) z += std::exp(-(s.raw_values()(a) - shift));
  const double log_z = std::log(z);
  // int_0^1 lambda_k^t lambda_l^{1-t} dt with ln lambda = -(mu - shift) - ln Z.
  auto coeff = [shift, log_z](double mu_k, double mu_l) {
    const double log_hi = -(std::min(mu_k, mu_l) - shift) - log_z;
    return Complex(std::exp(log_hi) * exprel(-std::abs(mu_k - mu_l)), 0.0);
  };
  const HermitianOperator& hi = family.generators()[i];
  const HermitianOperator rho = gibbs_state(family.hamiltonian(theta));
  const Matrix smeared = spectral_map(s, hi.matrix(), coeff);
  return HermitianOperator(Matrix(-smeared + rho.matrix() * expectation(rho, hi)), HermitianPolicy::symmetrize);
}

// ----------------------------------------------------------- time evolved

Complex phase_average(double delta) {
  if (std::abs(delta) < 1e-8) return {1.0 - delta * delta / 6.0, delta / 2.0};
  const double half = std::sin(0.5 * delta);
  return {std::sin(delta) / delta, 2.0 * half * half / delta};
}

TimeEvolvedFamily::TimeEvolvedFamily(HermitianOperator base_generator, std::vector<HermitianOperator> generators,
                                     double min_eig_floor)
    : StateFamily(min_eig_floor),
      base_generator_(std::move(base_generator)),
      base_state_(gibbs_state(base_generator_)),
      generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.dim() != base_generator_.dim()) throw ValidationError("TimeEvolvedFamily: generator dimension mismatch");
  }
}

HermitianOperator TimeEvolvedFamily::hamiltonian(const RealVector& phi) const {
  check_theta(phi);
  HermitianOperator h = HermitianOperator::zero(dim());
  for (std::size_t j = 0; j < generators_.size(); ++j) h += phi(static_cast<Index>(j)) * generators_[j];
  return h;
}

HermitianOperator TimeEvolvedFamily::evaluate(const RealVector& phi) const {
  const auto s = eig_hermitian(hamiltonian(phi));
  const CVector phases = (-Complex(0.0, 1.0) * s.raw_values().cast<Complex>()).array().exp().matrix();
  const Matrix u = s.basis() * phases.asDiagonal() * s.basis().adjoint();
  return HermitianOperator(Matrix(u * base_state_.matrix() * u.adjoint()), HermitianPolicy::symmetrize);
}

HermitianOperator TimeEvolvedFamily::derivative(const RealVector& phi, std::size_t i) const {
  return time_evolved_state_derivative(*this, phi, i);
}

HermitianOperator time_evolved_state_derivative(const TimeEvolvedFamily& family, const RealVector& phi,
                                                std::size_t i) {
  if (i >= family.param_dim()) throw ValidationError("time_evolved_state_derivative: index out of range");
  const auto s = eig_hermitian(family.hamiltonian(phi));
  // Psi^dagger(X) = int_0^1 e^{-iHt} X e^{iHt} dt.
  const Matrix psi_dag = spectral_map(s, family.generators()[i].matrix(),
                                      [](double nu_k, double nu_l) { return phase_average(nu_l - nu_k); });
  const Matrix sigma = family.evaluate(phi).matrix();
  const Matrix comm = sigma * psi_dag - psi_dag * sigma;
  return HermitianOperator(Matrix(Complex(0.0, 1.0) * comm), HermitianPolicy::symmetrize);
}

// ------------------------------------------------------------------- pure

PureStateFamily::PureStateFamily(std::string label, Index dim, std::size_t param_dim, Amplitude amplitude,
                                 Tangent tangent)
    : label_(std::move(label)),
      dim_(dim),
      param_dim_(param_dim),
      amplitude_(std::move(amplitude)),
      tangent_(std::move(tangent)) {}

CVector PureStateFamily::amplitude(const RealVector& theta) const {
  CVector psi = amplitude_(theta);
  if (psi.size() != dim_) throw ValidationError(label_ + ": amplitude has wrong dimension");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError(label_ + ": amplitude is not normalized");
  return psi;
}

CVector PureStateFamily::tangent(const RealVector& theta, std::size_t i) const {
  if (i >= param_dim_) throw ValidationError(label_ + ": tangent index out of range");
  return tangent_(theta, i);
}

FamilyPtr PureStateFamily::lifted(double floor) const {
  if (!(floor > 0.0) || floor * static_cast<double>(dim_) >= 1.0) {
    throw ValidationError("PureStateFamily::lifted: floor must lie in (0, 1/d)");
  }
  const double keep = 1.0 - static_cast<double>(dim_) * floor;
  PureStateFamily self = *this;
  auto eval = [self, keep, floor](const RealVector& theta) {
    const CVector psi = self.amplitude(theta);
    return HermitianOperator(Matrix(keep * psi * psi.adjoint() + floor * Matrix::Identity(psi.size(), psi.size())),
                             HermitianPolicy::symmetrize);
  };
  auto diff = [self, keep](const RealVector& theta, std::size_t i) {
    const CVector psi = self.amplitude(theta);
    const CVector dpsi = self.tangent(theta, i);
    return HermitianOperator(Matrix(keep * (dpsi * psi.adjoint() + psi * dpsi.adjoint())),
                             HermitianPolicy::symmetrize);
  };
  return std::make_shared<ExplicitFamily>(label_ + "_lifted", dim_, param_dim_, eval, diff, floor,
                                          FamilyKind::pure);
}

PureStateFamily real_rotation_family() {
  return PureStateFamily(
      "real_rotation", 2, 1,
      [](const RealVector& t) {
        CVector v(2);
        v << std::cos(t(0)), std::sin(t(0));
        return v;
      },
      [](const RealVector& t, std::size_t) {
        CVector v(2);
        v << -std::sin(t(0)), std::cos(t(0));
        return v;
      });
}

PureStateFamily global_phase_family(CVector psi0) {
  psi0.normalize();
  const Index d = psi0.size();
  return PureStateFamily(
      "global_phase", d, 1, [psi0](const RealVector& t) { return CVector(std::exp(Complex(0.0, t(0))) * psi0); },
      [psi0](const RealVector& t, std::size_t) {
        return CVector(Complex(0.0, 1.0) * std::exp(Complex(0.0, t(0))) * psi0);
      });
}

// ------------------------------------------------------------ probability

ProbabilityFamily::ProbabilityFamily(std::string label, Index outcomes, std::size_t param_dim,
                                     Evaluator evaluator, Differentiator differentiator)
    : label_(std::move(label)),
      outcomes_(outcomes),
      param_dim_(param_dim),
      evaluator_(std::move(evaluator)),
      differentiator_(std::move(differentiator)) {}

RealVector ProbabilityFamily::probabilities(const RealVector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != param_dim_) {
    throw ValidationError(label_ + ": wrong parameter count");
  }
  RealVector p = evaluator_(theta);
  if (p.size() != outcomes_) throw ValidationError(label_ + ": wrong outcome count");
  if (!(p.minCoeff() > 0.0) || std::abs(p.sum() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << label_ << ": distribution leaves the simplex interior (min " << p.minCoeff() << ", sum " << p.sum()
        << ")";
    throw ValidationError(msg.str());
  }
  return p;
}

RealVector ProbabilityFamily::derivative(const RealVector& theta, std::size_t i) const {
  if (i >= param_dim_) throw ValidationError(label_ + ": derivative index out of range");
  if (differentiator_) return differentiator_(theta, i);
  const double h = default_fd_step(theta);
  RealVector plus = theta;
  RealVector minus = theta;
  plus(static_cast<Index>(i)) += h;
  minus(static_cast<Index>(i)) -= h;
  return (probabilities(plus) - probabilities(minus)) / (2.0 * h);
}

ProbabilityFamily bernoulli_family() {
  return ProbabilityFamily(
      "bernoulli", 2, 1,
      [](const RealVector& t) {
        RealVector p(2);
        p << t(0), 1.0 - t(0);
        return p;
      },
      [](const RealVector&, std::size_t) {
        RealVector d(2);
        d << 1.0, -1.0;
        return d;
      });
}

ProbabilityFamily softmax_family(RealMatrix weights, RealVector offset) {
  if (weights.rows() != offset.size()) throw ValidationError("softmax_family: shape mismatch");
  const Index n = weights.rows();
  const auto params = static_cast<std::size_t>(weights.cols());
  auto eval = [weights, offset](const RealVector& t) {
    const RealVector logits = weights * t + offset;
    const RealVector e = (logits.array() - logits.maxCoeff()).exp().matrix();
    return RealVector(e / e.sum());
  };
  auto diff = [weights, eval](const RealVector& t, std::size_t i) {
    const RealVector p = eval(t);
    const RealVector col = weights.col(static_cast<Index>(i));
    return RealVector(p.cwiseProduct(col.array().matrix() - RealVector::Constant(col.size(), p.dot(col))));
  };
  return ProbabilityFamily("softmax", n, params, eval, diff);
}

ProbabilityFamily constant_distribution(RealVector p, std::size_t param_dim) {
  const Index n = p.size();
  return ProbabilityFamily(
      "constant", n, param_dim, [p](const RealVector&) { return p; },
      [n](const RealVector&, std::size_t) { return RealVector(RealVector::Zero(n)); });
}

FamilyPtr commuting_family(const ProbabilityFamily& p) {
  auto eval = [p](const RealVector& t) { return HermitianOperator::diagonal(p.probabilities(t)); };
  auto diff = [p](const RealVector& t, std::size_t i) { return HermitianOperator::diagonal(p.derivative(t, i)); };
  return std::make_shared<ExplicitFamily>("diag_" + p.label(), p.outcomes(), p.param_dim(), eval, diff);
}

// -------------------------------------------------------- classical-quantum

ClassicalQuantumFamily::ClassicalQuantumFamily(ProbabilityFamily weights, std::vector<FamilyPtr> branches)
    : weights_(std::move(weights)), branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("ClassicalQuantumFamily: no branches");
  if (static_cast<Index>(branches_.size()) != weights_.outcomes()) {
    throw ValidationError("ClassicalQuantumFamily: alphabet size mismatch");
  }
  for (const auto& b : branches_) {
    if (b->dim() != branches_.front()->dim() || b->param_dim() != weights_.param_dim()) {
      throw ValidationError("ClassicalQuantumFamily: branch shape mismatch");
    }
  }
}

FamilyPtr ClassicalQuantumFamily::embedded() const {
  const Index d = branch_dim();
  const auto n = static_cast<Index>(branches_.size());
  const ProbabilityFamily w = weights_;
  const std::vector<FamilyPtr> br = branches_;
  auto eval = [w, br, d, n](const RealVector& t) {
    const RealVector p = w.probabilities(t);
    Matrix joint = Matrix::Zero(n * d, n * d);
    for (Index x = 0; x < n; ++x) {
      joint.block(x * d, x * d, d, d) = p(x) * br[static_cast<std::size_t>(x)]->evaluate(t).matrix();
    }
    return HermitianOperator(joint, HermitianPolicy::symmetrize);
  };
  auto diff = [w, br, d, n](const RealVector& t, std::size_t i) {
    const RealVector p = w.probabilities(t);
    const RealVector dp = w.derivative(t, i);
    Matrix joint = Matrix::Zero(n * d, n * d);
    for (Index x = 0; x < n; ++x) {
      const auto& b = *br[static_cast<std::size_t>(x)];
      joint.block(x * d, x * d, d, d) = dp(x) * b.evaluate(t).matrix() + p(x) * b.derivative(t, i).matrix();
    }
    return HermitianOperator(joint, HermitianPolicy::symmetrize);
  };
  return std::make_shared<ExplicitFamily>("cq_embedded", n * d, weights_.param_dim(), eval, diff,
                                          branches_.front()->min_eig_floor(), FamilyKind::classical_quantum);
}

HermitianOperator ClassicalQuantumFamily::average_state(const RealVector& theta) const {
  const RealVector p = weights_.probabilities(theta);
  HermitianOperator avg = HermitianOperator::zero(branch_dim());
  for (std::size_t x = 0; x < branches_.size(); ++x) {
    avg += p(static_cast<Index>(x)) * branches_[x]->state(theta);
  }
  return avg;
}

// ------------------------------------------------------------ composites

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

FamilyPtr tensor_product_family(FamilyPtr a, FamilyPtr b) {
  const auto la = static_cast<Index>(a->param_dim());
  const auto lb = static_cast<Index>(b->param_dim());
  auto eval = [a, b, la, lb](const RealVector& t) {
    return HermitianOperator(kron(a->evaluate(t.head(la)).matrix(), b->evaluate(t.tail(lb)).matrix()),
                             HermitianPolicy::symmetrize);
  };
  auto diff = [a, b, la, lb](const RealVector& t, std::size_t i) {
    const RealVector ta = t.head(la);
    const RealVector tb = t.tail(lb);
    if (static_cast<Index>(i) < la) {
      return HermitianOperator(kron(a->derivative(ta, i).matrix(), b->evaluate(tb).matrix()),
                               HermitianPolicy::symmetrize);
    }
    return HermitianOperator(
        kron(a->evaluate(ta).matrix(), b->derivative(tb, i - static_cast<std::size_t>(la)).matrix()),
        HermitianPolicy::symmetrize);
  };
  return std::make_shared<ExplicitFamily>(a->label() + "_x_" + b->label(), a->dim() * b->dim(),
                                          static_cast<std::size_t>(la + lb), eval, diff,
                                          a->min_eig_floor() * b->min_eig_floor());
}

// ---------------------------------------------------------------- random

HermitianOperator random_gue(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    a(i, i) = normal(rng);
    for (Index j = i + 1; j < dim; ++j) {
      const double re = normal(rng) / std::sqrt(2.0);
      const double im = normal(rng) / std::sqrt(2.0);
      a(i, j) = Complex(re, im);
      a(j, i) = Complex(re, -im);
    }
  }
  HermitianOperator h(a, HermitianPolicy::symmetrize);
  const auto s = eig_hermitian(h);
  const double norm = std::max(std::abs(s.min_eigenvalue()), std::abs(s.max_eigenvalue()));
  return norm > 0.0 ? h * (1.0 / norm) : h;
}

std::shared_ptr<const ThermalFamily> random_thermal_family(Index dim, std::size_t params, std::mt19937_64& rng) {
  HermitianOperator bias = random_gue(dim, rng);
  std::vector<HermitianOperator> gens;
  gens.reserve(params);
  for (std::size_t j = 0; j < params; ++j) gens.push_back(random_gue(dim, rng));
  return std::make_shared<ThermalFamily>(std::move(gens), std::move(bias));
}

RealVector random_parameters(std::size_t n, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  RealVector t(static_cast<Index>(n));
  for (Index i = 0; i < t.size(); ++i) t(i) = uni(rng);
  return t;
}

CVector random_state_vector(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

}  // namespace qfim
