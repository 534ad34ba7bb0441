#pragma once

// Brute-force references used only by tests. These deliberately build the
// dense matrices and search numerically instead of reusing the library's
// elementwise fast paths.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>

#include "sci/cube.hpp"
#include "sci/sensing.hpp"

namespace oracle {

// Phi = [D_1, ..., D_B] built entry by entry.
inline Eigen::MatrixXd dense_phi(const sci::MaskCube& masks) {
  const Eigen::Index n = Eigen::Index(masks.frame_size());
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n * masks.nb);
  for (int k = 0; k < masks.nb; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      phi(i, k * n + i) = masks.values[std::size_t(k) * n + i];
  return phi;
}

inline sci::FrameCube random_cube(int nx, int ny, int nb, std::mt19937_64& rng,
                                  double lo = 0.0, double hi = 255.0) {
  sci::FrameCube cube(nx, ny, nb);
  std::uniform_real_distribution<double> uni(lo, hi);
  for (double& v : cube.values) v = uni(rng);
  return cube;
}

inline sci::FrameCube random_integer_cube(int nx, int ny, int nb, std::mt19937_64& rng) {
  sci::FrameCube cube(nx, ny, nb);
  std::uniform_int_distribution<int> uni(0, 255);
  for (double& v : cube.values) v = uni(rng);
  return cube;
}

// Bernoulli mask redrawn until every pixel is covered; after a few tries
// the stragglers get frame 0 forced on so generation always terminates.
inline sci::MaskCube random_binary_mask(int nx, int ny, int nb, std::mt19937_64& rng,
                                        double density = 0.5) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int attempt = 0;; ++attempt) {
    sci::MaskCube masks{{sci::FrameCube(nx, ny, nb, 1.0)}};
    for (double& v : masks.values) v = uni(rng) < density ? 1.0 : 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < masks.frame_size(); ++i) {
      double s = 0;
      for (int k = 0; k < nb; ++k) s += masks.values[std::size_t(k) * masks.frame_size() + i];
      if (s <= 0) {
        if (attempt < 4) {
          ok = false;
          break;
        }
        masks.values[i] = 1.0;
      }
    }
    if (ok) return masks;
  }
}

inline sci::MaskCube random_real_mask(int nx, int ny, int nb, std::mt19937_64& rng) {
  sci::MaskCube masks{{sci::FrameCube(nx, ny, nb, 1.0)}};
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  for (double& v : masks.values) v = uni(rng);
  return masks;
}

// Minimize a convex scalar function over [lo, hi] by golden-section.
template <class F>
double scalar_min(const F& f, double lo, double hi, int iters = 200) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return f(0.5 * (a + b));
}

// Optimal value of min_Z 1/2||R - Z||_F^2 + sum_j w_j sigma_j(Z) obtained by
// decoupling into per-singular-value scalar problems (von Neumann), each
// solved by brute force.
inline double wnnm_bruteforce_objective(const Eigen::MatrixXd& R, const Eigen::VectorXd& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
  const Eigen::VectorXd sv = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    const double s = sv[j], wj = w[j];
    auto f = [s, wj](double z) { return 0.5 * (s - z) * (s - z) + wj * z; };
    total += scalar_min(f, 0.0, s + 1.0);
  }
  return total;
}

// 1/2||R - Z||_F^2 + sum_j w_j sigma_j(Z) evaluated directly.
inline double wnnm_objective(const Eigen::MatrixXd& R, const Eigen::MatrixXd& Z,
                             const Eigen::VectorXd& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
  const Eigen::VectorXd sv = svd.singularValues();
  double reg = 0.0;
  for (Eigen::Index j = 0; j < sv.size() && j < w.size(); ++j) reg += w[j] * sv[j];
  return 0.5 * (R - Z).squaredNorm() + reg;
}

}  // namespace oracle
