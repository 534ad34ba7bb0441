#pragma once

#include <vector>

#include "sci/cube.hpp"

namespace sci {

struct FrameScores {
  std::vector<double> per_frame;
  double mean = 0.0;
};

// 10 log10(peak^2 / MSE) per frame plus the mean over frames. A zero-MSE
// frame reports +infinity. peak <= 0 takes the peak recorded in `a`.
FrameScores psnr(const FrameCube& a, const FrameCube& b, double peak = 0.0);

// Mean local SSIM per frame with an 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, windows fully inside the frame.
FrameScores ssim(const FrameCube& a, const FrameCube& b, double peak = 0.0);

struct Region {
  int row = 0;
  int col = 0;
  int rows = 0;
  int cols = 0;
};

// Pearson correlation between the B-length mean spectra of the region.
double spectral_correlation(const FrameCube& recon, const FrameCube& truth,
                            const Region& region);

}  // namespace sci
