#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sci/wnnm.hpp"

using namespace sci;

TEST_CASE("estimate_sigmas applies the noise-floor subtraction") {
  SUBCASE("sigma_n = 0 returns the singular values") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> uni(-1, 1);
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(5, 7, [&] { return uni(rng); });
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    Eigen::VectorXd est = estimate_sigmas(R, 0.0);
    CHECK((est - svd.singularValues()).norm() < 1e-12);
  }

  SUBCASE("values below the floor clamp to zero") {
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(3, 3) * 0.5;
    Eigen::VectorXd est = estimate_sigmas(R, 10.0);  // M sigma^2 = 300 >> 0.25
    CHECK(est.maxCoeff() == 0.0);
  }

  SUBCASE("diag(5,1), M = 2, sigma_n = 1 gives (sqrt(23), 0)") {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2, 2);
    R(0, 0) = 5.0;
    R(1, 1) = 1.0;
    Eigen::VectorXd est = estimate_sigmas(R, 1.0);
    CHECK(est[0] == doctest::Approx(std::sqrt(23.0)).epsilon(1e-12));
    CHECK(est[1] == 0.0);
  }
}

TEST_CASE("compute_weights inverts the estimated spectrum") {
  SUBCASE("huge singular values give vanishing weights") {
    Eigen::VectorXd sigma_hat(2);
    sigma_hat << 1e12, 1e11;
    Eigen::VectorXd w = compute_weights(sigma_hat, 70, 2.8, 1e-16);
    CHECK(w.maxCoeff() < 1e-9);
  }

  SUBCASE("zero estimate hits the eps ceiling") {
    Eigen::VectorXd sigma_hat = Eigen::VectorXd::Zero(1);
    Eigen::VectorXd w = compute_weights(sigma_hat, 70, 2.8, 1e-16);
    CHECK(w[0] == doctest::Approx(2.8 * std::sqrt(70.0) / 1e-16));
  }

  SUBCASE("c = 2.8, M = 70, sigma_hat = (10, 5)") {
    Eigen::VectorXd sigma_hat(2);
    sigma_hat << 10.0, 5.0;
    Eigen::VectorXd w = compute_weights(sigma_hat, 70, 2.8, 1e-16);
    CHECK(w[0] == doctest::Approx(2.8 * std::sqrt(70.0) / 10.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(2.8 * std::sqrt(70.0) / 5.0).epsilon(1e-12));
    CHECK(w[0] <= w[1]);  // descending sigma_hat, ascending weights
  }
}

TEST_CASE("wnnm_shrink") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uni(-1, 1);

  SUBCASE("zero weights return the input") {
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(4, 6, [&] { return uni(rng); });
    Eigen::MatrixXd Z = wnnm_shrink(R, Eigen::VectorXd::Zero(4));
    CHECK((Z - R).norm() <= 1e-10);
  }

  SUBCASE("weights above every singular value zero the matrix") {
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(4, 6, [&] { return uni(rng); });
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    Eigen::VectorXd w =
        Eigen::VectorXd::Constant(4, svd.singularValues().maxCoeff() + 1.0);
    CHECK(wnnm_shrink(R, w).norm() == 0.0);
  }

  SUBCASE("output singular values are max(sigma - w, 0) exactly") {
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(6, 8, [&] { return uni(rng); });
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    Eigen::VectorXd sv = svd.singularValues();
    Eigen::VectorXd w(6);
    w << 0.05, 0.1, 0.4, 0.8, 1.2, 5.0;
    Eigen::MatrixXd Z = wnnm_shrink(R, w);
    Eigen::JacobiSVD<Eigen::MatrixXd> out(Z);
    for (int j = 0; j < 6; ++j)
      CHECK(out.singularValues()[j] ==
            doctest::Approx(std::max(sv[j] - w[j], 0.0)).epsilon(1e-10).scale(1.0));
  }

  SUBCASE("closed form beats random perturbations and matches the scalar oracle") {
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(6, 8, [&] { return uni(rng); });
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    Eigen::VectorXd sv = svd.singularValues();
    // valid (ascending, non-negative) weights
    Eigen::VectorXd w(6);
    w << 0.01, 0.05, 0.012, 0.3, 0.7, 1.1;
    std::sort(w.data(), w.data() + w.size());

    Eigen::MatrixXd Z = wnnm_shrink(R, w);
    const double at_solution = oracle::wnnm_objective(R, Z, w);
    CHECK(at_solution ==
          doctest::Approx(oracle::wnnm_bruteforce_objective(R, w)).epsilon(1e-8));

    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::MatrixXd pert =
          Z + 0.05 * Eigen::MatrixXd::NullaryExpr(6, 8, [&] { return uni(rng); });
      CHECK(oracle::wnnm_objective(R, pert, w) >= at_solution - 1e-12);
    }
  }

  SUBCASE("non-finite input rejected") {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2, 2);
    R(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(wnnm_shrink(R, Eigen::VectorXd::Ones(2)), std::invalid_argument);
  }
}

TEST_CASE("closed form is globally optimal on small instances") {
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> uni(-2, 2);
  std::uniform_real_distribution<double> wuni(0.0, 1.5);
  std::uniform_int_distribution<int> dim(1, 4);

  for (int seed_trial = 0; seed_trial < 100; ++seed_trial) {
    const int rows = dim(rng), cols = dim(rng);
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(rows, cols, [&] { return uni(rng); });
    Eigen::VectorXd w(std::min(rows, cols));
    for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = wuni(rng);
    std::sort(w.data(), w.data() + w.size());

    Eigen::MatrixXd Z = wnnm_shrink(R, w);
    CHECK(oracle::wnnm_objective(R, Z, w) ==
          doctest::Approx(oracle::wnnm_bruteforce_objective(R, w)).epsilon(1e-8));
  }
}

TEST_CASE("denoise_group") {
  SUBCASE("zero matrix stays zero") {
    WnnmParams params{2.8, 1e-16, 5.0};
    CHECK(denoise_group(Eigen::MatrixXd::Zero(4, 6), params).norm() == 0.0);
  }

  SUBCASE("c = 0 returns the input unchanged") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> uni(-1, 1);
    Eigen::MatrixXd R = Eigen::MatrixXd::NullaryExpr(5, 7, [&] { return uni(rng); });
    WnnmParams params{0.0, 1e-16, 0.0};
    Eigen::MatrixXd Z = denoise_group(R, params);
    CHECK(Z == R);
  }

  SUBCASE("noisy rank-1 group collapses back to rank 1") {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> gauss(0.0, 0.5);
    Eigen::VectorXd u(6), v(9);
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    for (int i = 0; i < 6; ++i) u[i] = uni(rng);
    for (int i = 0; i < 9; ++i) v[i] = uni(rng);
    Eigen::MatrixXd R = 40.0 * u * v.transpose();
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 9; ++j) R(i, j) += gauss(rng);

    // noise floor M sigma^2 chosen above the noise-induced singular values
    WnnmParams params{2.8, 1e-16, 1.0};
    Eigen::MatrixXd Z = denoise_group(R, params);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
    CHECK(svd.singularValues()[0] > 1.0);
    for (int j = 1; j < 6; ++j) CHECK(svd.singularValues()[j] < 1e-6);
  }
}
