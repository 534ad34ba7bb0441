#pragma once

#include <Eigen/Core>

namespace sci {

struct WnnmParams {
  double c = 2.8;       // weight constant
  double eps = 1e-16;   // keeps weights finite when sigma_hat hits zero
  double sigma_n = 0.0; // current noise level
};

// Singular values of the clean group estimated from the noisy one:
//   sigma_hat_j = sqrt(max(sigma_j(R)^2 - M sigma_n^2, 0))
// with M = R.cols(). Returned descending, matching Eigen's SVD order.
Eigen::VectorXd estimate_sigmas(const Eigen::MatrixXd& R, double sigma_n);

// w_j = c sqrt(M) / (sigma_hat_j + eps); ascending because sigma_hat
// descends, which is the regime where the closed form below is optimal.
Eigen::VectorXd compute_weights(const Eigen::VectorXd& sigma_hat, int m, double c, double eps);

// Weighted soft-thresholding: SVD of R with singular values shrunk to
// max(sigma_j - w_j, 0). All-zero weights return R unchanged.
Eigen::MatrixXd wnnm_shrink(const Eigen::MatrixXd& R, const Eigen::VectorXd& w);

// estimate_sigmas -> compute_weights -> wnnm_shrink with one SVD.
Eigen::MatrixXd denoise_group(const Eigen::MatrixXd& R, const WnnmParams& params);

}  // namespace sci
