#pragma once

#include <functional>

namespace qfim::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Stops once the summed
// error estimate is below max(abs_tol, rel_tol * |value|).
[[nodiscard]] Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

// int_0^inf f(s) ds through s = t/(1-t).
[[nodiscard]] Result integrate_half_line(const Integrand& f, const Options& opts = {});

// int_a^b f(t) dt where f has an integrable log singularity at a, through t = a + e^{-u}.
[[nodiscard]] Result integrate_log_singular_left(const Integrand& f, double a, double b,
                                                 const Options& opts = {});

// Fixed-order Gauss-Legendre, 30 nodes, for smooth integrands.
[[nodiscard]] double gauss_legendre(const Integrand& f, double a, double b);

// Throws NumericError carrying `what` and the achieved error when r did not converge.
const Result& require_converged(const Result& r, const char* what);

}  // namespace qfim::quad
