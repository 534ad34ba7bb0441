#include "sci/sensing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sci {

SensingOperator::SensingOperator(MaskCube mask_cube, std::optional<double> sigma)
    : masks(std::move(mask_cube)), noise_sigma(sigma) {
  validate_cube(masks);
  for (double c : masks.values)
    if (c < 0) throw std::invalid_argument("mask codes must be non-negative");
  psi = psi_diag(masks);
}

std::vector<double> psi_diag(const MaskCube& masks) {
  const std::size_t n = masks.frame_size();
  std::vector<double> psi(n, 0.0);
  for (int k = 0; k < masks.nb; ++k) {
    const double* frame = masks.values.data() + std::size_t(k) * n;
    for (std::size_t i = 0; i < n; ++i) psi[i] += frame[i] * frame[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (psi[i] <= 0.0)
      throw std::invalid_argument("mask leaves pixel " + std::to_string(i) +
                                  " uncoded (psi = 0)");
  return psi;
}

void forward_flat(const SensingOperator& op, const double* x, double* y) {
  const std::size_t n = op.n();
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
  for (int k = 0; k < op.frames(); ++k) {
    const double* frame = x + std::size_t(k) * n;
    const double* code = op.masks.values.data() + std::size_t(k) * n;
    for (std::size_t i = 0; i < n; ++i) y[i] += code[i] * frame[i];
  }
}

void adjoint_flat(const SensingOperator& op, const double* y, double* x) {
  const std::size_t n = op.n();
  for (int k = 0; k < op.frames(); ++k) {
    double* frame = x + std::size_t(k) * n;
    const double* code = op.masks.values.data() + std::size_t(k) * n;
    for (std::size_t i = 0; i < n; ++i) frame[i] = code[i] * y[i];
  }
}

Measurement forward(const SensingOperator& op, const FrameCube& cube) {
  if (!cube.same_shape(op.masks))
    throw std::invalid_argument("cube shape does not match sensing operator");
  Measurement meas(op.nx(), op.ny());
  forward_flat(op, cube.values.data(), meas.values.data());
  return meas;
}

Measurement forward(const SensingOperator& op, const FrameCube& cube, std::mt19937_64& rng) {
  Measurement meas = forward(op, cube);
  if (op.noise_sigma && *op.noise_sigma > 0) {
    std::normal_distribution<double> gauss(0.0, *op.noise_sigma);
    for (double& v : meas.values) v += gauss(rng);
    meas.noise_sigma_hint = *op.noise_sigma;
  }
  return meas;
}

FrameCube adjoint(const SensingOperator& op, const Measurement& meas) {
  if (meas.nx != op.nx() || meas.ny != op.ny())
    throw std::invalid_argument("measurement shape does not match sensing operator");
  FrameCube cube(op.nx(), op.ny(), op.frames());
  adjoint_flat(op, meas.values.data(), cube.values.data());
  return cube;
}

namespace {

inline int wrap(int v, int m) {
  int r = v % m;
  return r < 0 ? r + m : r;
}

MaskCube shifted_bernoulli_mask(int nx, int ny, int nb, double density,
                                std::uint64_t seed, int di, int dj) {
  if (nx < 1 || ny < 1 || nb < 1) throw std::invalid_argument("mask dimensions must be >= 1");
  if (density <= 0.0 || density > 1.0)
    throw std::invalid_argument("mask density must be in (0, 1]");

  // Seed pattern, then cyclic shifts of it per frame.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::uint8_t> pattern(std::size_t(nx) * ny);
  for (auto& p : pattern) p = uni(rng) < density ? 1 : 0;

  // Frame k samples the seed pattern at (i - k*di, j - k*dj); a pixel is
  // uncovered when all B sampled cells are zero. Force one of them on so
  // psi stays positive (pick the frame by a per-pixel hash for spread).
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      bool covered = false;
      for (int k = 0; k < nb && !covered; ++k)
        covered = pattern[std::size_t(wrap(i - k * di, nx)) * ny + wrap(j - k * dj, ny)] != 0;
      if (!covered) {
        int k = int((std::uint64_t(i) * 2654435761u + std::uint64_t(j) * 40503u + seed) % nb);
        pattern[std::size_t(wrap(i - k * di, nx)) * ny + wrap(j - k * dj, ny)] = 1;
      }
    }

  MaskCube masks{{FrameCube(nx, ny, nb, 1.0)}};
  for (int k = 0; k < nb; ++k)
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        masks.at(i, j, k) =
            pattern[std::size_t(wrap(i - k * di, nx)) * ny + wrap(j - k * dj, ny)];
  return masks;
}

}  // namespace

MaskCube gen_shifting_binary_mask(int nx, int ny, int nb, double density,
                                  std::uint64_t seed, int di, int dj) {
  return shifted_bernoulli_mask(nx, ny, nb, density, seed, di, dj);
}

MaskCube gen_spectral_shift_masks(int nx, int ny, int nb, double density,
                                  std::uint64_t seed, int step_di, int step_dj) {
  return shifted_bernoulli_mask(nx, ny, nb, density, seed, step_di, step_dj);
}

double sigma_for_snr(const SensingOperator& op, const FrameCube& cube, double snr_db) {
  Measurement clean = forward(op, cube);
  double energy = 0.0;
  for (double v : clean.values) energy += v * v;
  if (energy <= 0.0) throw std::invalid_argument("zero-energy measurement, SNR undefined");
  return std::sqrt(energy / double(clean.size()) * std::pow(10.0, -snr_db / 10.0));
}

double empirical_snr_db(const Measurement& noisy, const Measurement& clean) {
  if (noisy.size() != clean.size())
    throw std::invalid_argument("measurement sizes differ");
  double signal = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    signal += clean.values[i] * clean.values[i];
    const double g = noisy.values[i] - clean.values[i];
    noise += g * g;
  }
  if (noise <= 0.0) throw std::invalid_argument("measurements are identical, SNR undefined");
  return 10.0 * std::log10(signal / noise);
}

}  // namespace sci
