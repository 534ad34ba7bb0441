#include "sci/wnnm.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace sci {

namespace {

Eigen::VectorXd sigmas_from_singulars(const Eigen::VectorXd& sv, Eigen::Index m,
                                      double sigma_n) {
  Eigen::VectorXd est(sv.size());
  const double floor_term = double(m) * sigma_n * sigma_n;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    est[j] = std::sqrt(std::max(sv[j] * sv[j] - floor_term, 0.0));
  return est;
}

Eigen::MatrixXd shrink_from_svd(const Eigen::MatrixXd& u, Eigen::VectorXd sv,
                                const Eigen::MatrixXd& v, const Eigen::VectorXd& w) {
  if (w.size() != sv.size()) throw std::invalid_argument("weight vector length mismatch");
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (w[j] < 0) throw std::invalid_argument("weights must be non-negative");
    sv[j] = std::max(sv[j] - w[j], 0.0);
  }
  return u * sv.asDiagonal() * v.transpose();
}

}  // namespace

Eigen::VectorXd estimate_sigmas(const Eigen::MatrixXd& R, double sigma_n) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
  return sigmas_from_singulars(svd.singularValues(), R.cols(), sigma_n);
}

Eigen::VectorXd compute_weights(const Eigen::VectorXd& sigma_hat, int m, double c, double eps) {
  if (c < 0 || eps <= 0) throw std::invalid_argument("need c >= 0 and eps > 0");
  const double scale = c * std::sqrt(double(m));
  Eigen::VectorXd w(sigma_hat.size());
  for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = scale / (sigma_hat[j] + eps);
  return w;
}

Eigen::MatrixXd wnnm_shrink(const Eigen::MatrixXd& R, const Eigen::VectorXd& w) {
  if (!R.allFinite()) throw std::invalid_argument("wnnm_shrink: non-finite input");
  if (w.size() == 0 || w.maxCoeff() == 0.0) return R;  // identity shrinkage, keep exact
  Eigen::BDCSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return shrink_from_svd(svd.matrixU(), svd.singularValues(), svd.matrixV(), w);
}

Eigen::MatrixXd denoise_group(const Eigen::MatrixXd& R, const WnnmParams& params) {
  if (!R.allFinite()) throw std::invalid_argument("denoise_group: non-finite input");
  if (params.c == 0.0) return R;  // weights are exactly zero
  Eigen::BDCSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma_hat =
      sigmas_from_singulars(svd.singularValues(), R.cols(), params.sigma_n);
  const Eigen::VectorXd w =
      compute_weights(sigma_hat, static_cast<int>(R.cols()), params.c, params.eps);
  return shrink_from_svd(svd.matrixU(), svd.singularValues(), svd.matrixV(), w);
}

}  // namespace sci
