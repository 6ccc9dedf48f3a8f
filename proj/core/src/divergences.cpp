#include "qfim/divergences.hpp"

#include "qfim/errors.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace qfim {

RenyiParams::RenyiParams(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!std::isfinite(alpha) || !std::isfinite(z) || !(alpha > 0.0) || !(z > 0.0) || alpha == 1.0) {
    std::ostringstream msg;
    msg << "RenyiParams: need alpha > 0, alpha != 1, z > 0 (got alpha=" << alpha << ", z=" << z << ")";
    throw DomainError(msg.str());
  }
}

bool RenyiParams::data_processing_region() const noexcept {
  if (alpha_ < 1.0) return z_ >= std::max(alpha_, 1.0 - alpha_);
  return alpha_ - 1.0 <= z_ && z_ <= alpha_ && alpha_ <= 2.0 * z_;
}

namespace {

SpectralDecomposition positive_spectrum(const HermitianOperator& x, const char* who) {
  auto s = eig_hermitian(x);
  if (!(s.raw_values()(0) > 0.0)) {
    std::ostringstream msg;
    msg << who << ": input is not positive definite (min eigenvalue " << s.raw_values()(0) << ")";
    throw DomainError(msg.str());
  }
  if (std::abs(x.trace() - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << who << ": input trace " << x.trace() << " is not 1";
    throw ValidationError(msg.str());
  }
  return s;
}

void require_renyi_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << who << ": alpha must be positive and different from 1 (got " << alpha << ")";
    throw DomainError(msg.str());
  }
}

// Tr[M^r] for Hermitian M assumed positive semidefinite.
double trace_power(const Matrix& m, double r) {
  const HermitianOperator h(m, HermitianPolicy::symmetrize);
  const auto s = eig_hermitian(h);
  double acc = 0.0;
  for (Index a = 0; a < s.raw_values().size(); ++a) acc += std::pow(std::max(s.raw_values()(a), 0.0), r);
  return acc;
}

double renyi_from_trace(double q, double alpha) { return std::log(q) / (alpha - 1.0); }

}  // namespace

double umegaki(const HermitianOperator& rho, const HermitianOperator& sigma) {
  const auto sr = positive_spectrum(rho, "umegaki");
  const auto ss = positive_spectrum(sigma, "umegaki");
  const HermitianOperator log_rho = apply_function(sr, functions::log());
  const HermitianOperator log_sigma = apply_function(ss, functions::log());
  return rho.trace_product(log_rho - log_sigma);
}

double alpha_z_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, const RenyiParams& p) {
  const auto sr = positive_spectrum(rho, "alpha_z_renyi");
  const auto ss = positive_spectrum(sigma, "alpha_z_renyi");
  const double a = p.alpha();
  const double z = p.z();
  const Matrix outer = matrix_power(ss, (1.0 - a) / (2.0 * z)).matrix();
  const Matrix inner = matrix_power(sr, a / z).matrix();
  return renyi_from_trace(trace_power(outer * inner * outer, z), a);
}

double alpha_z_renyi_rho_outside(const HermitianOperator& rho, const HermitianOperator& sigma,
                                 const RenyiParams& p) {
  const auto sr = positive_spectrum(rho, "alpha_z_renyi");
  const auto ss = positive_spectrum(sigma, "alpha_z_renyi");
  const double a = p.alpha();
  const double z = p.z();
  const Matrix outer = matrix_power(sr, a / (2.0 * z)).matrix();
  const Matrix inner = matrix_power(ss, (1.0 - a) / z).matrix();
  return renyi_from_trace(trace_power(outer * inner * outer, z), a);
}

double log_euclidean_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  require_renyi_alpha(alpha, "log_euclidean_renyi");
  const auto sr = positive_spectrum(rho, "log_euclidean_renyi");
  const auto ss = positive_spectrum(sigma, "log_euclidean_renyi");
  const HermitianOperator mixed =
      alpha * apply_function(sr, functions::log()) + (1.0 - alpha) * apply_function(ss, functions::log());
  const auto sm = eig_hermitian(mixed);
  return renyi_from_trace(sm.raw_values().array().exp().sum(), alpha);
}

double geometric_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  require_renyi_alpha(alpha, "geometric_renyi");
  positive_spectrum(rho, "geometric_renyi");
  const auto ss = positive_spectrum(sigma, "geometric_renyi");
  const Matrix inv_sqrt = matrix_power(ss, -0.5).matrix();
  const Matrix sqrt_sigma = matrix_power(ss, 0.5).matrix();
  const HermitianOperator ratio(Matrix(inv_sqrt * rho.matrix() * inv_sqrt), HermitianPolicy::symmetrize);
  const Matrix powered = matrix_power(eig_hermitian(ratio), alpha).matrix();
  const double q = (sqrt_sigma * powered * sqrt_sigma).trace().real();
  return renyi_from_trace(q, alpha);
}

double geometric_renyi_rho_anchored(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  require_renyi_alpha(alpha, "geometric_renyi");
  const auto sr = positive_spectrum(rho, "geometric_renyi");
  positive_spectrum(sigma, "geometric_renyi");
  const Matrix inv_sqrt = matrix_power(sr, -0.5).matrix();
  const Matrix sqrt_rho = matrix_power(sr, 0.5).matrix();
  const HermitianOperator ratio(Matrix(inv_sqrt * sigma.matrix() * inv_sqrt), HermitianPolicy::symmetrize);
  const Matrix powered = matrix_power(eig_hermitian(ratio), 1.0 - alpha).matrix();
  const double q = (sqrt_rho * powered * sqrt_rho).trace().real();
  return renyi_from_trace(q, alpha);
}

double belavkin_staszewski(const HermitianOperator& rho, const HermitianOperator& sigma) {
  const auto sr = positive_spectrum(rho, "belavkin_staszewski");
  const auto ss = positive_spectrum(sigma, "belavkin_staszewski");
  const Matrix sqrt_rho = matrix_power(sr, 0.5).matrix();
  const Matrix sigma_inv = matrix_power(ss, -1.0).matrix();
  const HermitianOperator inner(Matrix(sqrt_rho * sigma_inv * sqrt_rho), HermitianPolicy::symmetrize);
  const HermitianOperator log_inner = apply_function(eig_hermitian(inner), functions::log());
  return rho.trace_product(log_inner);
}

double petz_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  require_renyi_alpha(alpha, "petz_renyi");
  const auto sr = positive_spectrum(rho, "petz_renyi");
  const auto ss = positive_spectrum(sigma, "petz_renyi");
  return renyi_from_trace(matrix_power(sr, alpha).trace_product(matrix_power(ss, 1.0 - alpha)), alpha);
}

double sandwiched_renyi(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  require_renyi_alpha(alpha, "sandwiched_renyi");
  positive_spectrum(rho, "sandwiched_renyi");
  const auto ss = positive_spectrum(sigma, "sandwiched_renyi");
  const Matrix outer = matrix_power(ss, (1.0 - alpha) / (2.0 * alpha)).matrix();
  return renyi_from_trace(trace_power(outer * rho.matrix() * outer, alpha), alpha);
}

namespace {

void require_simplex(const RealVector& p, const char* who) {
  if (!(p.minCoeff() > 0.0) || std::abs(p.sum() - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << who << ": vector is not in the simplex interior";
    throw DomainError(msg.str());
  }
}

}  // namespace

double classical_renyi(const RealVector& p, const RealVector& q, double alpha) {
  require_renyi_alpha(alpha, "classical_renyi");
  require_simplex(p, "classical_renyi");
  require_simplex(q, "classical_renyi");
  if (p.size() != q.size()) throw ValidationError("classical_renyi: size mismatch");
  double acc = 0.0;
  for (Index x = 0; x < p.size(); ++x) acc += std::pow(p(x), alpha) * std::pow(q(x), 1.0 - alpha);
  return renyi_from_trace(acc, alpha);
}

double classical_kl(const RealVector& p, const RealVector& q) {
  require_simplex(p, "classical_kl");
  require_simplex(q, "classical_kl");
  if (p.size() != q.size()) throw ValidationError("classical_kl: size mismatch");
  double acc = 0.0;
  for (Index x = 0; x < p.size(); ++x) acc += p(x) * std::log(p(x) / q(x));
  return acc;
}

// --------------------------------------------------------- DivergenceSpec

DivergenceSpec DivergenceSpec::umegaki() { return {DivergenceKind::umegaki, 1.0, 1.0}; }

DivergenceSpec DivergenceSpec::alpha_z(const RenyiParams& p) {
  return {DivergenceKind::alpha_z, p.alpha(), p.z()};
}

DivergenceSpec DivergenceSpec::log_euclidean(double alpha) {
  require_renyi_alpha(alpha, "DivergenceSpec::log_euclidean");
  return {DivergenceKind::log_euclidean, alpha, 1.0};
}

DivergenceSpec DivergenceSpec::geometric(double alpha) {
  require_renyi_alpha(alpha, "DivergenceSpec::geometric");
  return {DivergenceKind::geometric, alpha, 1.0};
}

DivergenceSpec DivergenceSpec::belavkin_staszewski() { return {DivergenceKind::belavkin_staszewski, 1.0, 1.0}; }

DivergenceSpec DivergenceSpec::petz(double alpha) {
  require_renyi_alpha(alpha, "DivergenceSpec::petz");
  return {DivergenceKind::petz, alpha, 1.0};
}

DivergenceSpec DivergenceSpec::sandwiched(double alpha) {
  require_renyi_alpha(alpha, "DivergenceSpec::sandwiched");
  return {DivergenceKind::sandwiched, alpha, alpha};
}

double DivergenceSpec::prefactor() const noexcept {
  switch (kind_) {
    case DivergenceKind::umegaki:
    case DivergenceKind::belavkin_staszewski: return 1.0;
    default: return 1.0 / alpha_;
  }
}

std::string DivergenceSpec::label() const {
  std::ostringstream out;
  switch (kind_) {
    case DivergenceKind::umegaki: return "umegaki";
    case DivergenceKind::belavkin_staszewski: return "belavkin_staszewski";
    case DivergenceKind::alpha_z: out << "alpha_z(" << alpha_ << "," << z_ << ")"; break;
    case DivergenceKind::log_euclidean: out << "log_euclidean(" << alpha_ << ")"; break;
    case DivergenceKind::geometric: out << "geometric(" << alpha_ << ")"; break;
    case DivergenceKind::petz: out << "petz(" << alpha_ << ")"; break;
    case DivergenceKind::sandwiched: out << "sandwiched(" << alpha_ << ")"; break;
  }
  return out.str();
}

double DivergenceSpec::operator()(const HermitianOperator& rho, const HermitianOperator& sigma) const {
  switch (kind_) {
    case DivergenceKind::umegaki: return qfim::umegaki(rho, sigma);
    case DivergenceKind::alpha_z: return alpha_z_renyi(rho, sigma, RenyiParams(alpha_, z_));
    case DivergenceKind::log_euclidean: return log_euclidean_renyi(rho, sigma, alpha_);
    case DivergenceKind::geometric: return geometric_renyi(rho, sigma, alpha_);
    case DivergenceKind::belavkin_staszewski: return qfim::belavkin_staszewski(rho, sigma);
    case DivergenceKind::petz: return petz_renyi(rho, sigma, alpha_);
    case DivergenceKind::sandwiched: return sandwiched_renyi(rho, sigma, alpha_);
  }
  throw ValidationError("DivergenceSpec: unknown kind");
}

// --------------------------------------------------------------- channels

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus_ops) : kraus_(std::move(kraus_ops)) {
  if (kraus_.empty()) throw ValidationError("QuantumChannel: no Kraus operators");
  const Index din = kraus_.front().cols();
  const Index dout = kraus_.front().rows();
  Matrix total = Matrix::Zero(din, din);
  for (const auto& k : kraus_) {
    if (k.cols() != din || k.rows() != dout) throw ValidationError("QuantumChannel: Kraus shape mismatch");
    total += k.adjoint() * k;
  }
  const double defect = (total - Matrix::Identity(din, din)).norm();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "QuantumChannel: Kraus operators are not trace preserving (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
}

HermitianOperator apply_channel(const QuantumChannel& channel, const HermitianOperator& x) {
  if (x.dim() != channel.input_dim()) throw ValidationError("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(channel.output_dim(), channel.output_dim());
  for (const auto& k : channel.kraus_ops()) out += k * x.matrix() * k.adjoint();
  return HermitianOperator(out, HermitianPolicy::symmetrize);
}

QuantumChannel identity_channel(Index dim) { return QuantumChannel({Matrix::Identity(dim, dim)}); }

QuantumChannel depolarizing_channel(Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing_channel: p must lie in [0,1]");
  std::vector<Matrix> ks;
  ks.emplace_back(std::sqrt(1.0 - p) * Matrix::Identity(dim, dim));
  const double amp = std::sqrt(p / static_cast<double>(dim));
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      Matrix k = Matrix::Zero(dim, dim);
      k(i, j) = amp;
      ks.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(ks));
}

QuantumChannel partial_trace_channel(Index dim_keep, Index dim_drop) {
  std::vector<Matrix> ks;
  const Matrix id = Matrix::Identity(dim_keep, dim_keep);
  for (Index m = 0; m < dim_drop; ++m) {
    Matrix bra = Matrix::Zero(1, dim_drop);
    bra(0, m) = 1.0;
    ks.push_back(kron(id, bra));
  }
  return QuantumChannel(std::move(ks));
}

QuantumChannel random_channel(Index dim_in, Index dim_out, int kraus_count, std::mt19937_64& rng) {
  if (kraus_count < 1 || kraus_count * dim_out < dim_in) {
    throw DomainError("random_channel: need kraus_count * dim_out >= dim_in");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index rows = kraus_count * dim_out;
  Matrix g(rows, dim_in);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < dim_in; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  const Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix iso = qr.householderQ() * Matrix::Identity(rows, dim_in);
  std::vector<Matrix> ks;
  for (int m = 0; m < kraus_count; ++m) ks.emplace_back(iso.block(m * dim_out, 0, dim_out, dim_in));
  return QuantumChannel(std::move(ks));
}

FamilyPtr pushforward_family(FamilyPtr family, QuantumChannel channel) {
  if (family->dim() != channel.input_dim()) throw ValidationError("pushforward_family: dimension mismatch");
  auto eval = [family, channel](const RealVector& t) { return apply_channel(channel, family->evaluate(t)); };
  auto diff = [family, channel](const RealVector& t, std::size_t i) {
    return apply_channel(channel, family->derivative(t, i));
  };
  return std::make_shared<ExplicitFamily>("channel_" + family->label(), channel.output_dim(), family->param_dim(),
                                          eval, diff, family->min_eig_floor());
}

}  // namespace qfim
