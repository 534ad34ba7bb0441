#pragma once

#include <Eigen/Core>

#include "sci/sensing.hpp"

namespace sci {

Eigen::VectorXd forward_vec(const SensingOperator& op, const Eigen::VectorXd& x);
Eigen::VectorXd adjoint_vec(const SensingOperator& op, const Eigen::VectorXd& y);

// Closed-form minimizer of 1/2||y - Phi theta||^2 + gamma/2||theta - (x+b)||^2:
//   theta = (x+b) + Phi^T [ (y - Phi(x+b)) / (gamma + psi) ]   (elementwise)
// The diagonal Phi Phi^T makes this O(nB); no dense matrix is formed.
// gamma = 0 is accepted and degenerates to the GAP projection.
Eigen::VectorXd admm_theta_update(const Eigen::VectorXd& x, const Eigen::VectorXd& b,
                                  const SensingOperator& op, const Eigen::VectorXd& y,
                                  double gamma);

// Euclidean projection of theta onto the manifold {x : Phi x = y}:
//   x = theta + Phi^T [ (y - Phi theta) / psi ]
Eigen::VectorXd gap_project(const Eigen::VectorXd& theta, const SensingOperator& op,
                            const Eigen::VectorXd& y);

struct GapAccStep {
  Eigen::VectorXd x;
  Eigen::VectorXd y_running;
};

// Accelerated GAP: project onto the running manifold, then advance it by
// the residual of the true measurement.
GapAccStep gap_accelerated_step(const Eigen::VectorXd& theta_prev, const SensingOperator& op,
                                const Eigen::VectorXd& y, const Eigen::VectorXd& y_running);

// b' = b - (theta - x)
Eigen::VectorXd admm_dual_update(const Eigen::VectorXd& b, const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& x);

}  // namespace sci
