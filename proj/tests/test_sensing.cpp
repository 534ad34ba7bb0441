#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sci/sensing.hpp"

using namespace sci;

namespace {

MaskCube ones_mask(int nx, int ny, int nb) {
  MaskCube m{{FrameCube(nx, ny, nb, 1.0)}};
  for (double& v : m.values) v = 1.0;
  return m;
}

}  // namespace

TEST_CASE("forward sums modulated frames") {
  SensingOperator op(ones_mask(2, 2, 2));
  FrameCube cube(2, 2, 2);
  for (std::size_t p = 0; p < 4; ++p) {
    cube.values[p] = double(p) + 1;      // frame a
    cube.values[4 + p] = 10.0 * (p + 1); // frame b
  }
  Measurement y = forward(op, cube);
  for (std::size_t p = 0; p < 4; ++p) CHECK(y.values[p] == cube.values[p] + cube.values[4 + p]);

  Measurement zero = forward(op, FrameCube(2, 2, 2));
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("forward and adjoint match the dense sensing matrix") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    MaskCube masks = oracle::random_binary_mask(3, 3, 2, rng);
    SensingOperator op(masks);
    FrameCube cube = oracle::random_cube(3, 3, 2, rng);

    const Eigen::MatrixXd phi = oracle::dense_phi(masks);
    const Eigen::Map<const Eigen::VectorXd> x(cube.values.data(), cube.values.size());
    const Eigen::VectorXd y_dense = phi * x;

    Measurement y = forward(op, cube);
    for (Eigen::Index i = 0; i < y_dense.size(); ++i)
      CHECK(y.values[i] == doctest::Approx(y_dense[i]).epsilon(1e-12));

    const Eigen::VectorXd xt_dense = phi.transpose() * y_dense;
    Measurement meas(3, 3);
    for (int i = 0; i < 9; ++i) meas.values[i] = y_dense[i];
    FrameCube back = adjoint(op, meas);
    for (Eigen::Index i = 0; i < xt_dense.size(); ++i)
      CHECK(back.values[i] == doctest::Approx(xt_dense[i]).epsilon(1e-12));
  }
}

TEST_CASE("adjoint copies the measurement through the codes") {
  SensingOperator op(ones_mask(2, 3, 2));
  Measurement meas(2, 3);
  for (std::size_t i = 0; i < meas.values.size(); ++i) meas.values[i] = double(i) - 2.5;
  FrameCube cube = adjoint(op, meas);
  for (std::size_t i = 0; i < meas.values.size(); ++i) {
    CHECK(cube.values[i] == meas.values[i]);
    CHECK(cube.values[6 + i] == meas.values[i]);
  }

  MaskCube split{{FrameCube(2, 3, 2, 1.0)}};
  for (std::size_t i = 0; i < 6; ++i) split.values[i] = 1.0;  // frame 0 on, frame 1 off
  // frame 1 all zero leaves psi positive thanks to frame 0
  SensingOperator op2(split);
  FrameCube cube2 = adjoint(op2, meas);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(cube2.values[i] == meas.values[i]);
    CHECK(cube2.values[6 + i] == 0.0);
  }
}

TEST_CASE("adjoint identity <Phi x, y> == <x, Phi^T y>") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    MaskCube masks = oracle::random_real_mask(4, 3, 3, rng);
    SensingOperator op(masks);
    FrameCube cube = oracle::random_cube(4, 3, 3, rng, -1, 1);
    Measurement meas(4, 3);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (double& v : meas.values) v = uni(rng);

    Measurement fx = forward(op, cube);
    FrameCube aty = adjoint(op, meas);
    double lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < fx.values.size(); ++i) lhs += fx.values[i] * meas.values[i];
    for (std::size_t i = 0; i < aty.values.size(); ++i) rhs += aty.values[i] * cube.values[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("psi_diag equals the diagonal of the dense Phi Phi^T") {
  SUBCASE("all-ones masks, B = 8") {
    std::vector<double> psi = psi_diag(ones_mask(3, 3, 8));
    for (double v : psi) CHECK(v == 8.0);
  }

  SUBCASE("binary masks count active frames") {
    std::mt19937_64 rng(5);
    MaskCube masks = oracle::random_binary_mask(4, 4, 3, rng);
    std::vector<double> psi = psi_diag(masks);
    for (std::size_t i = 0; i < masks.frame_size(); ++i) {
      double count = 0;
      for (int k = 0; k < 3; ++k) count += masks.values[k * 16 + i];
      CHECK(psi[i] == count);
    }
  }

  SUBCASE("real masks: dense product is diagonal with exactly zero off-diagonals") {
    std::mt19937_64 rng(6);
    MaskCube masks = oracle::random_real_mask(4, 4, 3, rng);
    const Eigen::MatrixXd phi = oracle::dense_phi(masks);
    const Eigen::MatrixXd gram = phi * phi.transpose();
    std::vector<double> psi = psi_diag(masks);
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
      for (Eigen::Index j = 0; j < gram.cols(); ++j) {
        if (i == j)
          CHECK(gram(i, j) == doctest::Approx(psi[i]).epsilon(1e-12));
        else
          CHECK(gram(i, j) == 0.0);
      }
  }

  SUBCASE("uncoded pixel is rejected") {
    MaskCube masks{{FrameCube(2, 2, 2, 1.0)}};
    for (double& v : masks.values) v = 1.0;
    masks.at(1, 1, 0) = 0.0;
    masks.at(1, 1, 1) = 0.0;
    CHECK_THROWS_AS(psi_diag(masks), std::invalid_argument);
    CHECK_THROWS_AS([&] { SensingOperator op(masks); }(), std::invalid_argument);
  }
}

TEST_CASE("shifting binary mask generator") {
  SUBCASE("zero shift repeats the pattern") {
    MaskCube masks = gen_shifting_binary_mask(6, 6, 4, 0.5, 42, 0, 0);
    for (int k = 1; k < 4; ++k)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(masks.at(i, j, k) == masks.at(i, j, 0));
  }

  SUBCASE("density 1 gives all ones") {
    MaskCube masks = gen_shifting_binary_mask(4, 4, 3, 1.0, 1, 1, 1);
    for (double v : masks.values) CHECK(v == 1.0);
  }

  SUBCASE("frame k is frame 0 relocated by k*(di,dj) with wraparound") {
    const int di = 1, dj = 2;
    MaskCube masks = gen_shifting_binary_mask(5, 7, 4, 0.4, 9, di, dj);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 7; ++j)
          CHECK(masks.at(i, j, k) ==
                masks.at((i - k * di % 5 + 5) % 5, ((j - k * dj) % 7 + 7) % 7, 0));
  }

  SUBCASE("deterministic per seed, psi valid even at low density") {
    MaskCube a = gen_shifting_binary_mask(8, 8, 4, 0.15, 7, 1, 1);
    MaskCube b = gen_shifting_binary_mask(8, 8, 4, 0.15, 7, 1, 1);
    CHECK(a.values == b.values);
    CHECK_NOTHROW(psi_diag(a));
    MaskCube c = gen_shifting_binary_mask(8, 8, 4, 0.15, 8, 1, 1);
    CHECK(c.values != a.values);
  }

  SUBCASE("degenerate density rejected") {
    CHECK_THROWS_AS(gen_shifting_binary_mask(4, 4, 2, 0.0, 1, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("spectral shift masks disperse band by band") {
  SUBCASE("zero step keeps bands identical") {
    MaskCube masks = gen_spectral_shift_masks(6, 6, 3, 0.5, 3, 0, 0);
    for (int k = 1; k < 3; ++k)
      for (std::size_t i = 0; i < masks.frame_size(); ++i)
        CHECK(masks.values[k * masks.frame_size() + i] == masks.values[i]);
  }

  SUBCASE("step (0,1): band b shifted b columns") {
    MaskCube masks = gen_spectral_shift_masks(4, 6, 3, 0.5, 11, 0, 1);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j)
          CHECK(masks.at(i, j, k) == masks.at(i, ((j - k) % 6 + 6) % 6, 0));
  }

  SUBCASE("resulting operator passes the dense forward check") {
    std::mt19937_64 rng(13);
    MaskCube masks = gen_spectral_shift_masks(4, 4, 3, 0.6, 17, 0, 1);
    SensingOperator op(masks);
    FrameCube cube = oracle::random_cube(4, 4, 3, rng);
    const Eigen::MatrixXd phi = oracle::dense_phi(masks);
    const Eigen::Map<const Eigen::VectorXd> x(cube.values.data(), cube.values.size());
    const Eigen::VectorXd y_dense = phi * x;
    Measurement y = forward(op, cube);
    for (Eigen::Index i = 0; i < y_dense.size(); ++i)
      CHECK(y.values[i] == doctest::Approx(y_dense[i]).epsilon(1e-12));
  }
}

TEST_CASE("compressive sampling rate is 1/B") {
  MaskCube masks = gen_shifting_binary_mask(6, 5, 4, 0.5, 2, 1, 1);
  SensingOperator op(masks);
  FrameCube cube(6, 5, 4);
  Measurement y = forward(op, cube);
  CHECK(y.size() * 4 == cube.size());
}

TEST_CASE("declared SNR is realized within half a dB") {
  std::mt19937_64 rng(31);
  MaskCube masks = gen_shifting_binary_mask(32, 32, 8, 0.5, 12, 1, 1);
  FrameCube cube = oracle::random_integer_cube(32, 32, 8, rng);
  const double sigma = sigma_for_snr(SensingOperator(masks), cube, 20.0);
  SensingOperator op(masks, sigma);
  Measurement clean = forward(op, cube);
  Measurement noisy = forward(op, cube, rng);
  CHECK(empirical_snr_db(noisy, clean) == doctest::Approx(20.0).epsilon(0.025));
}
