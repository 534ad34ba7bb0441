#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sci/cube.hpp"

namespace sci {

// The SCI sensing matrix Phi = [D_1, ..., D_B] with D_k = diag(vec(C_k)).
// Phi Phi^T is diagonal; its entries psi_i = sum_k c_{k,i}^2 are
// precomputed once. For binary masks this coincides with sum_k c_{k,i}.
struct SensingOperator {
  MaskCube masks;
  std::vector<double> psi;
  std::optional<double> noise_sigma;

  explicit SensingOperator(MaskCube mask_cube, std::optional<double> sigma = {});

  int nx() const { return masks.nx; }
  int ny() const { return masks.ny; }
  int frames() const { return masks.nb; }
  std::size_t n() const { return masks.frame_size(); }
};

// Diagonal of Phi Phi^T for a mask cube. Throws if any entry is zero.
std::vector<double> psi_diag(const MaskCube& masks);

// Y = sum_k X_k (.) C_k, noiseless.
Measurement forward(const SensingOperator& op, const FrameCube& cube);
// Same, plus i.i.d. Gaussian noise drawn from rng when noise_sigma is set.
Measurement forward(const SensingOperator& op, const FrameCube& cube, std::mt19937_64& rng);

// Frame k of Phi^T y is Y (.) C_k.
FrameCube adjoint(const SensingOperator& op, const Measurement& meas);

// Flat-vector forms used by the reconstruction loops; x has n*B entries,
// y has n entries.
void forward_flat(const SensingOperator& op, const double* x, double* y);
void adjoint_flat(const SensingOperator& op, const double* y, double* x);

// Bernoulli(density) pattern whose frame k is the seed pattern cyclically
// shifted by k*(di, dj). Pixels that would end up with zero total code
// across frames get one covering code forced on so that psi stays
// strictly positive. Deterministic per seed.
MaskCube gen_shifting_binary_mask(int nx, int ny, int nb, double density,
                                  std::uint64_t seed, int di, int dj);

// CASSI-style simulated dispersion: band k shifted by k*(step_di, step_dj).
MaskCube gen_spectral_shift_masks(int nx, int ny, int nb, double density,
                                  std::uint64_t seed, int step_di, int step_dj);

// Noise level giving the requested measurement SNR, defined as
// 10*log10(||Phi x||^2 / ||g||^2) in expectation.
double sigma_for_snr(const SensingOperator& op, const FrameCube& cube, double snr_db);

// SNR realized by a particular noise draw.
double empirical_snr_db(const Measurement& noisy, const Measurement& clean);

}  // namespace sci
