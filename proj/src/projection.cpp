#include "sci/projection.hpp"

#include <stdexcept>

namespace sci {

Eigen::VectorXd forward_vec(const SensingOperator& op, const Eigen::VectorXd& x) {
  if (x.size() != Eigen::Index(op.n() * op.frames()))
    throw std::invalid_argument("signal vector has wrong length");
  Eigen::VectorXd y(op.n());
  forward_flat(op, x.data(), y.data());
  return y;
}

Eigen::VectorXd adjoint_vec(const SensingOperator& op, const Eigen::VectorXd& y) {
  if (y.size() != Eigen::Index(op.n()))
    throw std::invalid_argument("measurement vector has wrong length");
  Eigen::VectorXd x(op.n() * op.frames());
  adjoint_flat(op, y.data(), x.data());
  return x;
}

namespace {

// Common to the ADMM update and the GAP projection: spread the
// psi-weighted measurement residual back into signal space.
Eigen::VectorXd residual_correction(const Eigen::VectorXd& base, const SensingOperator& op,
                                    const Eigen::VectorXd& y, double gamma) {
  Eigen::VectorXd r = y - forward_vec(op, base);
  for (Eigen::Index i = 0; i < r.size(); ++i) r[i] /= gamma + op.psi[i];
  return base + adjoint_vec(op, r);
}

}  // namespace

Eigen::VectorXd admm_theta_update(const Eigen::VectorXd& x, const Eigen::VectorXd& b,
                                  const SensingOperator& op, const Eigen::VectorXd& y,
                                  double gamma) {
  if (gamma < 0) throw std::invalid_argument("gamma must be non-negative");
  return residual_correction(x + b, op, y, gamma);
}

Eigen::VectorXd gap_project(const Eigen::VectorXd& theta, const SensingOperator& op,
                            const Eigen::VectorXd& y) {
  return residual_correction(theta, op, y, 0.0);
}

GapAccStep gap_accelerated_step(const Eigen::VectorXd& theta_prev, const SensingOperator& op,
                                const Eigen::VectorXd& y, const Eigen::VectorXd& y_running) {
  GapAccStep step;
  step.x = residual_correction(theta_prev, op, y_running, 0.0);
  step.y_running = y_running + (y - forward_vec(op, theta_prev));
  return step;
}

Eigen::VectorXd admm_dual_update(const Eigen::VectorXd& b, const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& x) {
  return b - (theta - x);
}

}  // namespace sci
