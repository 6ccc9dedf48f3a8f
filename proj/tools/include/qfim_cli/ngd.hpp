#pragma once

#include <qfim/families.hpp>
#include <qfim/kernels.hpp>

#include <vector>

namespace qfim::cli {

struct NgdSettings {
  double learning_rate = 1.0;
  int iterations = 200;
  double damping = 0.0;
  // Stop once the loss falls below this value.
  double stop_loss = 1e-14;
};

struct NgdStep {
  int iteration = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double metric_min_eig = 0.0;
  RealVector theta;
};

struct NgdTrace {
  std::vector<NgdStep> steps;
  RealVector theta;
  bool converged = false;
};

// Natural gradient descent on L(theta) = D(target || rho(theta)) (Umegaki) with the
// metric I_K(theta) + damping * Id and a central-difference gradient. Throws
// NumericError when the metric cannot be inverted.
[[nodiscard]] NgdTrace run_ngd(const StateFamily& family, const HermitianOperator& target, const ZetaKernel& metric,
                               const NgdSettings& settings, RealVector theta0);

}  // namespace qfim::cli
