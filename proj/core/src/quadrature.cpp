#include "qfim/quadrature.hpp"

#include "qfim/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace qfim::quad {
namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const Integrand& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (a == b) return {0.0, 0.0, true, 0};
  std::priority_queue<Panel> panels;
  panels.push(kronrod_panel(f, a, b));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int count = 1;
  // Refine the worst panel until the global estimate meets tolerance.
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) && count < opts.max_intervals) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      panels.push(worst);
      break;
    }
    const Panel left = kronrod_panel(f, worst.a, mid);
    const Panel right = kronrod_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Resum to shed drift from the incremental updates.
  double value = 0.0;
  double error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  const bool ok = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
  return {value, error, ok, count};
}

Result integrate_half_line(const Integrand& f, const Options& opts) {
  const Integrand mapped = [&f](double t) {
    const double one_minus = 1.0 - t;
    const double s = t / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    const double v = f(s);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

Result integrate_log_singular_left(const Integrand& f, double a, double b, const Options& opts) {
  if (b <= a) return {0.0, 0.0, true, 0};
  // t = a + e^{-u}, u in [-ln(b-a), inf); then shift u to start at zero.
  const double u0 = -std::log(b - a);
  const Integrand g = [&f, a, u0](double v) {
    const double w = std::exp(-(v + u0));
    const double t = a + w;
    // Nodes that round onto the endpoint carry weight O(w ln w).
    return t == a ? 0.0 : f(t) * w;
  };
  return integrate_half_line(g, opts);
}

double gauss_legendre(const Integrand& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

const Result& require_converged(const Result& r, const char* what) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << ": quadrature did not converge (estimate " << r.value << ", achieved error " << r.error
        << " after " << r.intervals << " panels)";
    throw NumericError(msg.str());
  }
  return r;
}

}  // namespace qfim::quad
