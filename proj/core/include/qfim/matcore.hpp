#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qfim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative gap below which eigenvalues are merged and divided differences
// fall back to the midpoint derivative.
inline constexpr double kClusterTolerance = 1e-8;
inline constexpr double kHermitianTolerance = 1e-12;

enum class HermitianPolicy { reject, symmetrize };

// Dense complex Hermitian matrix. Stored exactly Hermitian: accepted input is
// replaced by (M + M^dagger)/2.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix entries, HermitianPolicy policy = HermitianPolicy::reject);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(const RealVector& values);
  // |v><v|
  static HermitianOperator outer(const CVector& v);

  [[nodiscard]] Index dim() const noexcept { return entries_.rows(); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return entries_; }
  [[nodiscard]] double trace() const { return entries_.trace().real(); }
  // Tr[this * other], real for Hermitian pairs.
  [[nodiscard]] double trace_product(const HermitianOperator& other) const;

  HermitianOperator& operator+=(const HermitianOperator& rhs);
  HermitianOperator& operator-=(const HermitianOperator& rhs);
  HermitianOperator& operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  friend HermitianOperator operator-(HermitianOperator a) { return a *= -1.0; }

 private:
  Matrix entries_;
};

// Largest |M_ij - conj(M_ji)|.
[[nodiscard]] double hermitian_defect(const Matrix& m);

class SpectralDecomposition {
 public:
  [[nodiscard]] Index dim() const noexcept { return basis_.rows(); }
  [[nodiscard]] std::size_t cluster_count() const noexcept { return eigenvalues_.size(); }
  // One value per cluster, strictly increasing.
  [[nodiscard]] const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  [[nodiscard]] const std::vector<Matrix>& projectors() const noexcept { return projectors_; }
  // Orthonormal eigenvectors as columns, ordered by eigenvalue.
  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  // Clustered eigenvalue attached to each basis column.
  [[nodiscard]] const RealVector& column_eigenvalues() const noexcept { return column_values_; }
  [[nodiscard]] const std::vector<std::size_t>& cluster_of_column() const noexcept { return cluster_of_; }
  // Unclustered solver output, one per column.
  [[nodiscard]] const RealVector& raw_values() const noexcept { return raw_values_; }
  [[nodiscard]] double cluster_tolerance() const noexcept { return cluster_tol_; }
  [[nodiscard]] double min_eigenvalue() const { return eigenvalues_.front(); }
  [[nodiscard]] double max_eigenvalue() const { return eigenvalues_.back(); }

  [[nodiscard]] Matrix to_eigenbasis(const Matrix& x) const { return basis_.adjoint() * x * basis_; }
  [[nodiscard]] Matrix from_eigenbasis(const Matrix& y) const { return basis_ * y * basis_.adjoint(); }
  [[nodiscard]] HermitianOperator reconstruct() const;

 private:
  friend SpectralDecomposition eig_hermitian(const HermitianOperator& a, double cluster_tol);

  std::vector<double> eigenvalues_;
  std::vector<Matrix> projectors_;
  Matrix basis_;
  RealVector column_values_;
  RealVector raw_values_;
  std::vector<std::size_t> cluster_of_;
  double cluster_tol_ = kClusterTolerance;
};

enum class FunctionDomain { real_line, positive };

struct ScalarFunction {
  std::string label;
  std::function<double(double)> eval;
  std::function<double(double)> derivative;
  FunctionDomain domain = FunctionDomain::real_line;
  // Optional cancellation-free (f(x) - f(y)) / (x - y), called with x > y.
  std::function<double(double, double)> difference_quotient;

  [[nodiscard]] bool in_domain(double x) const {
    return domain == FunctionDomain::real_line || x > 0.0;
  }
};

namespace functions {
[[nodiscard]] ScalarFunction identity();
[[nodiscard]] ScalarFunction exp();
[[nodiscard]] ScalarFunction log();
// x^r on (0, inf).
[[nodiscard]] ScalarFunction power(double r);
[[nodiscard]] ScalarFunction square();
}  // namespace functions

// expm1(x)/x with value 1 at x = 0.
[[nodiscard]] double exprel(double x);

[[nodiscard]] SpectralDecomposition eig_hermitian(const HermitianOperator& a,
                                                  double cluster_tol = kClusterTolerance);

[[nodiscard]] HermitianOperator apply_function(const SpectralDecomposition& s, const ScalarFunction& f);
[[nodiscard]] HermitianOperator apply_function(const HermitianOperator& a, const ScalarFunction& f);
// a^r for positive definite a.
[[nodiscard]] HermitianOperator matrix_power(const SpectralDecomposition& s, double r);

[[nodiscard]] double divided_difference(const ScalarFunction& f, double x, double y,
                                        double tol = kClusterTolerance);

// V (W o V^dagger X V) V^dagger with W_ab = weight(lambda_a, lambda_b) over clustered eigenvalues.
[[nodiscard]] Matrix spectral_map(const SpectralDecomposition& s, const Matrix& x,
                                  const std::function<Complex(double, double)>& weight);

[[nodiscard]] HermitianOperator matrix_derivative(const SpectralDecomposition& s,
                                                  const HermitianOperator& da, const ScalarFunction& f);
[[nodiscard]] HermitianOperator duhamel_exp_derivative(const SpectralDecomposition& s,
                                                       const HermitianOperator& da);
[[nodiscard]] HermitianOperator log_derivative_integral(const SpectralDecomposition& s,
                                                        const HermitianOperator& da);
// Resolvent integral for d ln A evaluated by quadrature, one scalar integral per cluster pair.
[[nodiscard]] HermitianOperator log_derivative_quadrature(const SpectralDecomposition& s,
                                                          const HermitianOperator& da);
[[nodiscard]] HermitianOperator power_derivative(const SpectralDecomposition& s,
                                                 const HermitianOperator& da, double r);
// Integral representation of d A^r, r in (-1,0) u (0,1).
[[nodiscard]] HermitianOperator power_derivative_quadrature(const SpectralDecomposition& s,
                                                            const HermitianOperator& da, double r);
[[nodiscard]] double trace_function_derivative(const SpectralDecomposition& s,
                                               const HermitianOperator& da, const ScalarFunction& f);

// sin(r pi)/pi * int_0^inf t^r / ((x+t)(y+t)) dt, which equals (x^r - y^r)/(x - y)
// (r x^(r-1) on the diagonal) for r in (-1,0) u (0,1).
[[nodiscard]] double power_difference_integral(double x, double y, double r);

}  // namespace qfim
