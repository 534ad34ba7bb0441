#pragma once

#include "sci/cube.hpp"
#include "sci/sensing.hpp"
#include "sci/solver.hpp"

namespace sci {

// Anisotropic 2-D total variation per frame, fixed-iteration projected
// gradient on the dual. iters = 0 returns the cube unchanged.
FrameCube tv_denoise(const FrameCube& cube, double tv_weight, int iters);

// Sum over frames of |D_x u|_1 + |D_y u|_1 (forward differences).
double tv_objective(const FrameCube& cube);

struct GapTvConfig {
  SolverMode mode = SolverMode::gap;
  double gamma = 0.0;
  int max_iters = 60;
  double tol = 1e-4;
  double tv_weight = 5.0;  // tuned once on the synthetic suite
  int tv_iters = 40;
  bool freeze_dual = false;
  bool compute_ssim = true;
};

// Same split loop as the WNNM solver with the denoiser swapped for TV.
SolveResult gaptv_run(const SensingOperator& op, const Measurement& y,
                      const GapTvConfig& cfg, const FrameCube* truth = nullptr);

}  // namespace sci
