#include "qfim_cli/ngd.hpp"

#include <qfim/divergences.hpp>
#include <qfim/errors.hpp>
#include <qfim/infomat.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <sstream>

namespace qfim::cli {

namespace {

double loss_at(const StateFamily& family, const HermitianOperator& target, const RealVector& theta) {
  return umegaki(target, family.state(theta));
}

RealVector loss_gradient(const StateFamily& family, const HermitianOperator& target, const RealVector& theta) {
  const double h = default_fd_step(theta);
  RealVector grad(theta.size());
  for (Index i = 0; i < theta.size(); ++i) {
    RealVector e = RealVector::Zero(theta.size());
    e(i) = h;
    grad(i) = (loss_at(family, target, theta + e) - loss_at(family, target, theta - e)) / (2.0 * h);
  }
  return grad;
}

}  // namespace

NgdTrace run_ngd(const StateFamily& family, const HermitianOperator& target, const ZetaKernel& metric,
                 const NgdSettings& settings, RealVector theta0) {
  if (static_cast<std::size_t>(theta0.size()) != family.param_dim()) {
    throw ValidationError("run_ngd: initial theta has the wrong length");
  }
  if (target.dim() != family.dim()) throw ValidationError("run_ngd: target dimension mismatch");
  validate_state(target, 0.0, "run_ngd target");

  NgdTrace trace;
  RealVector theta = std::move(theta0);
  const auto n = theta.size();
  for (int it = 0;; ++it) {
    const double loss = loss_at(family, target, theta);
    const RealVector grad = loss_gradient(family, target, theta);
    const RealMatrix info = info_spectral(family, theta, metric).values;
    const RealMatrix damped = info + settings.damping * RealMatrix::Identity(n, n);
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<RealMatrix>(info, Eigen::EigenvaluesOnly).eigenvalues()(0);
    trace.steps.push_back({it, loss, grad.norm(), min_eig, theta});
    if (loss < settings.stop_loss) {
      trace.converged = true;
      break;
    }
    if (it >= settings.iterations) break;

    const Eigen::LDLT<RealMatrix> solver(damped);
    const double damped_min = min_eig + settings.damping;
    if (solver.info() != Eigen::Success || !(damped_min > 1e-12 * std::max(1.0, damped.trace()))) {
      std::ostringstream msg;
      msg << "run_ngd: metric is singular at iteration " << it << " (min eigenvalue " << min_eig
          << "); set a positive damping lambda_reg";
      throw NumericError(msg.str());
    }
    theta -= settings.learning_rate * solver.solve(grad);
  }
  trace.theta = theta;
  return trace;
}

}  // namespace qfim::cli
