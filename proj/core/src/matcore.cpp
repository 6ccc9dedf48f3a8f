#include "qfim/matcore.hpp"

#include "qfim/errors.hpp"
#include "qfim/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfim {

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries, HermitianPolicy policy) {
  if (entries.rows() != entries.cols()) {
    throw ValidationError("HermitianOperator: matrix is not square");
  }
  if (!entries.allFinite()) throw ValidationError("HermitianOperator: non-finite entries");
  if (policy == HermitianPolicy::reject && entries.size() > 0) {
    const double defect = hermitian_defect(entries);
    if (defect > kHermitianTolerance) {
      std::ostringstream msg;
      msg << "HermitianOperator: input is not Hermitian (max |A - A^dagger| = " << defect << ")";
      throw ValidationError(msg.str());
    }
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Index dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }

HermitianOperator HermitianOperator::diagonal(const RealVector& values) {
  return HermitianOperator(Matrix(values.cast<Complex>().asDiagonal()));
}

HermitianOperator HermitianOperator::outer(const CVector& v) {
  return HermitianOperator(Matrix(v * v.adjoint()), HermitianPolicy::symmetrize);
}

double HermitianOperator::trace_product(const HermitianOperator& other) const {
  // Tr[AB] = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (entries_.array() * other.entries_.array().conjugate()).sum().real();
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& rhs) {
  entries_ += rhs.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& rhs) {
  entries_ -= rhs.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  entries_ *= s;
  return *this;
}

HermitianOperator SpectralDecomposition::reconstruct() const {
  return HermitianOperator(Matrix(basis_ * raw_values().cast<Complex>().asDiagonal() * basis_.adjoint()),
                           HermitianPolicy::symmetrize);
}

double exprel(double x) {
  if (std::abs(x) < 1e-5) return 1.0 + x * (0.5 + x / 6.0);
  return std::expm1(x) / x;
}

namespace functions {

ScalarFunction identity() {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; }, FunctionDomain::real_line,
          [](double, double) { return 1.0; }};
}

ScalarFunction exp() {
  return {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
          FunctionDomain::real_line, [](double x, double y) { return std::exp(x) * exprel(y - x); }};
}

ScalarFunction log() {
  return {"log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
          FunctionDomain::positive,
          [](double x, double y) { return -std::log1p((y - x) / x) / (x - y); }};
}

ScalarFunction power(double r) {
  std::ostringstream name;
  name << "power(" << r << ")";
  return {name.str(), [r](double x) { return std::pow(x, r); },
          [r](double x) { return r * std::pow(x, r - 1.0); }, FunctionDomain::positive,
          [r](double x, double y) {
            return -std::pow(x, r) * std::expm1(r * std::log1p((y - x) / x)) / (x - y);
          }};
}

ScalarFunction square() {
  return {"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
          FunctionDomain::real_line, [](double x, double y) { return x + y; }};
}

}  // namespace functions

SpectralDecomposition eig_hermitian(const HermitianOperator& a, double cluster_tol) {
  if (!(cluster_tol >= 0.0)) throw ValidationError("eig_hermitian: cluster tolerance must be nonnegative");
  if (a.dim() == 0) throw ValidationError("eig_hermitian: empty operator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericError("eig_hermitian: eigensolver did not converge");

  SpectralDecomposition s;
  s.cluster_tol_ = cluster_tol;
  s.basis_ = solver.eigenvectors();
  s.raw_values_ = solver.eigenvalues();
  const Index d = a.dim();
  s.cluster_of_.resize(static_cast<std::size_t>(d));

  // Walk the ascending spectrum, opening a new cluster once a value leaves
  // the tolerance window of the cluster's first member.
  std::vector<Index> starts;
  for (Index i = 0; i < d; ++i) {
    const double v = s.raw_values_(i);
    if (starts.empty()) {
      starts.push_back(i);
    } else {
      const double anchor = s.raw_values_(starts.back());
      if (std::abs(v - anchor) > cluster_tol * std::max(1.0, std::abs(v))) starts.push_back(i);
    }
    s.cluster_of_[static_cast<std::size_t>(i)] = starts.size() - 1;
  }
  starts.push_back(d);

  s.column_values_.resize(d);
  for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
    const Index begin = starts[k];
    const Index count = starts[k + 1] - begin;
    const double mean = s.raw_values_.segment(begin, count).mean();
    s.eigenvalues_.push_back(mean);
    s.column_values_.segment(begin, count).setConstant(mean);
    const auto cols = s.basis_.middleCols(begin, count);
    s.projectors_.emplace_back(cols * cols.adjoint());
  }
  return s;
}

HermitianOperator apply_function(const SpectralDecomposition& s, const ScalarFunction& f) {
  const RealVector& raw = s.raw_values();
  RealVector mapped(raw.size());
  for (Index i = 0; i < raw.size(); ++i) {
    if (!f.in_domain(raw(i))) {
      std::ostringstream msg;
      msg << "apply_function(" << f.label << "): eigenvalue " << raw(i) << " outside domain";
      throw DomainError(msg.str());
    }
    mapped(i) = f.eval(raw(i));
  }
  return HermitianOperator(Matrix(s.basis() * mapped.cast<Complex>().asDiagonal() * s.basis().adjoint()),
                           HermitianPolicy::symmetrize);
}

HermitianOperator apply_function(const HermitianOperator& a, const ScalarFunction& f) {
  return apply_function(eig_hermitian(a), f);
}

HermitianOperator matrix_power(const SpectralDecomposition& s, double r) {
  return apply_function(s, functions::power(r));
}

double divided_difference(const ScalarFunction& f, double x, double y, double tol) {
  if (x < y) std::swap(x, y);
  if (std::abs(x - y) > tol * std::max({1.0, std::abs(x), std::abs(y)})) {
    if (f.difference_quotient) return f.difference_quotient(x, y);
    return (f.eval(x) - f.eval(y)) / (x - y);
  }
  return f.derivative(0.5 * (x + y));
}

Matrix spectral_map(const SpectralDecomposition& s, const Matrix& x,
                    const std::function<Complex(double, double)>& weight) {
  const std::size_t n = s.cluster_count();
  Eigen::MatrixXcd w(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      w(static_cast<Index>(k), static_cast<Index>(l)) = weight(s.eigenvalues()[k], s.eigenvalues()[l]);
    }
  }
  Matrix y = s.to_eigenbasis(x);
  const auto& cl = s.cluster_of_column();
  for (Index a = 0; a < y.rows(); ++a) {
    for (Index b = 0; b < y.cols(); ++b) {
      y(a, b) *= w(static_cast<Index>(cl[static_cast<std::size_t>(a)]),
                   static_cast<Index>(cl[static_cast<std::size_t>(b)]));
    }
  }
  return s.from_eigenbasis(y);
}

namespace {

void require_domain(const SpectralDecomposition& s, const ScalarFunction& f, const char* where) {
  for (double v : s.eigenvalues()) {
    if (!f.in_domain(v)) {
      std::ostringstream msg;
      msg << where << ": eigenvalue " << v << " outside the domain of " << f.label;
      throw DomainError(msg.str());
    }
  }
}

void require_positive(const SpectralDecomposition& s, const char* where) {
  if (s.min_eigenvalue() <= 0.0) {
    std::ostringstream msg;
    msg << where << ": operator is not positive definite (min eigenvalue " << s.min_eigenvalue() << ")";
    throw DomainError(msg.str());
  }
}

HermitianOperator weighted(const SpectralDecomposition& s, const HermitianOperator& da,
                           const std::function<double(double, double)>& coeff) {
  if (da.dim() != s.dim()) throw ValidationError("matrix derivative: dimension mismatch");
  return HermitianOperator(
      spectral_map(s, da.matrix(), [&coeff](double x, double y) { return Complex(coeff(x, y), 0.0); }),
      HermitianPolicy::symmetrize);
}

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max({1.0, x, y}); }

}  // namespace

HermitianOperator matrix_derivative(const SpectralDecomposition& s, const HermitianOperator& da,
                                    const ScalarFunction& f) {
  require_domain(s, f, "matrix_derivative");
  const double tol = s.cluster_tolerance();
  return weighted(s, da, [&f, tol](double x, double y) { return divided_difference(f, x, y, tol); });
}

HermitianOperator duhamel_exp_derivative(const SpectralDecomposition& s, const HermitianOperator& da) {
  // int_0^1 e^{t x} e^{(1-t) y} dt = e^{max} (1 - e^{-|x-y|}) / |x-y|.
  return weighted(s, da, [](double x, double y) {
    const double hi = std::max(x, y);
    return std::exp(hi) * exprel(-std::abs(x - y));
  });
}

HermitianOperator log_derivative_integral(const SpectralDecomposition& s, const HermitianOperator& da) {
  require_positive(s, "log_derivative_integral");
  const double tol = s.cluster_tolerance();
  return weighted(s, da, [tol](double x, double y) {
    if (near(x, y, tol)) return 2.0 / (x + y);
    const double hi = std::max(x, y);
    const double lo = std::min(x, y);
    return -std::log1p((lo - hi) / hi) / (hi - lo);
  });
}

HermitianOperator log_derivative_quadrature(const SpectralDecomposition& s, const HermitianOperator& da) {
  require_positive(s, "log_derivative_quadrature");
  return weighted(s, da, [](double x, double y) {
    const quad::Options opts{1e-15, 1e-11, 4000};
    const auto r = quad::integrate_half_line([x, y](double t) { return 1.0 / ((x + t) * (y + t)); }, opts);
    return quad::require_converged(r, "log_derivative_quadrature").value;
  });
}

HermitianOperator power_derivative(const SpectralDecomposition& s, const HermitianOperator& da, double r) {
  require_positive(s, "power_derivative");
  return matrix_derivative(s, da, functions::power(r));
}

HermitianOperator power_derivative_quadrature(const SpectralDecomposition& s, const HermitianOperator& da,
                                              double r) {
  if (!(r > -1.0 && r < 1.0) || r == 0.0) {
    throw DomainError("power_derivative_quadrature: exponent must lie in (-1,0) or (0,1)");
  }
  require_positive(s, "power_derivative_quadrature");
  return weighted(s, da, [r](double x, double y) { return power_difference_integral(x, y, r); });
}

double trace_function_derivative(const SpectralDecomposition& s, const HermitianOperator& da,
                                 const ScalarFunction& f) {
  require_domain(s, f, "trace_function_derivative");
  const Matrix y = s.to_eigenbasis(da.matrix());
  double acc = 0.0;
  for (Index a = 0; a < y.rows(); ++a) acc += f.derivative(s.column_eigenvalues()(a)) * y(a, a).real();
  return acc;
}

double power_difference_integral(double x, double y, double r) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("power_difference_integral: arguments must be positive");
  // Rescale by c = sqrt(xy) so the two scaled arguments have unit product,
  // split at t = c, and remove the t^r endpoint behaviour on each piece:
  //   [0,1]:   t = v^{1/(1+r)}  gives  dv / ((1+r)(x'+t)(y'+t))
  //   [1,inf): t = v^{-1/(1-r)} gives  dv / ((1-r)(x'w+1)(y'w+1)), w = 1/t
  const double c = std::sqrt(x) * std::sqrt(y);
  const double xs = x / c;
  const double ys = y / c;
  const quad::Options opts{1e-15, 1e-11, 4000};
  const auto inner = quad::integrate(
      [=](double v) {
        const double t = std::pow(v, 1.0 / (1.0 + r));
        return 1.0 / ((xs + t) * (ys + t));
      },
      0.0, 1.0, opts);
  const auto outer = quad::integrate(
      [=](double v) {
        const double w = std::pow(v, 1.0 / (1.0 - r));
        return 1.0 / ((xs * w + 1.0) * (ys * w + 1.0));
      },
      0.0, 1.0, opts);
  quad::require_converged(inner, "power_difference_integral");
  quad::require_converged(outer, "power_difference_integral");
  const double scaled = inner.value / (1.0 + r) + outer.value / (1.0 - r);
  return std::sin(r * std::numbers::pi) / std::numbers::pi * std::pow(c, r - 1.0) * scaled;
}

}  // namespace qfim
