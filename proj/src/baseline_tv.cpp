#include "sci/baseline_tv.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sci {

namespace {

// Dual projected gradient for min_u 1/2||u - f||^2 + w(|D_x u|_1 + |D_y u|_1).
// The dual field p is box-constrained to [-w, w] per component and the
// primal is recovered as u = f + div p. Step 1/8 covers the Lipschitz
// constant of div grad.
void tv_frame(const double* f, double* u, int nx, int ny, double w, int iters) {
  const std::size_t n = std::size_t(nx) * ny;
  std::vector<double> px(n, 0.0), py(n, 0.0), div(n, 0.0);
  const double tau = 0.125;

  auto idx = [ny](int i, int j) { return std::size_t(i) * ny + j; };

  for (int it = 0; it < iters; ++it) {
    // div p with backward differences
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        double d = px[idx(i, j)] + py[idx(i, j)];
        if (i > 0) d -= px[idx(i - 1, j)];
        if (j > 0) d -= py[idx(i, j - 1)];
        div[idx(i, j)] = d + f[idx(i, j)];  // residual f + div p
      }
    // p += tau * grad(residual), clamped to the box
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        if (i + 1 < nx) {
          double v = px[idx(i, j)] + tau * (div[idx(i + 1, j)] - div[idx(i, j)]);
          px[idx(i, j)] = v < -w ? -w : (v > w ? w : v);
        }
        if (j + 1 < ny) {
          double v = py[idx(i, j)] + tau * (div[idx(i, j + 1)] - div[idx(i, j)]);
          py[idx(i, j)] = v < -w ? -w : (v > w ? w : v);
        }
      }
  }

  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double d = px[idx(i, j)] + py[idx(i, j)];
      if (i > 0) d -= px[idx(i - 1, j)];
      if (j > 0) d -= py[idx(i, j - 1)];
      u[idx(i, j)] = f[idx(i, j)] + d;
    }
}

}  // namespace

FrameCube tv_denoise(const FrameCube& cube, double tv_weight, int iters) {
  if (tv_weight <= 0) throw std::invalid_argument("tv_weight must be positive");
  if (iters < 0) throw std::invalid_argument("iters must be >= 0");
  if (iters == 0) return cube;

  FrameCube out = cube;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < cube.nb; ++k)
    tv_frame(cube.values.data() + std::size_t(k) * cube.frame_size(),
             out.values.data() + std::size_t(k) * cube.frame_size(), cube.nx, cube.ny,
             tv_weight, iters);
  return out;
}

double tv_objective(const FrameCube& cube) {
  double total = 0.0;
  for (int k = 0; k < cube.nb; ++k)
    for (int i = 0; i < cube.nx; ++i)
      for (int j = 0; j < cube.ny; ++j) {
        if (i + 1 < cube.nx) total += std::abs(cube.at(i + 1, j, k) - cube.at(i, j, k));
        if (j + 1 < cube.ny) total += std::abs(cube.at(i, j + 1, k) - cube.at(i, j, k));
      }
  return total;
}

SolveResult gaptv_run(const SensingOperator& op, const Measurement& y,
                      const GapTvConfig& cfg, const FrameCube* truth) {
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const double peak = truth ? truth->peak : 255.0;

  SolveResult result;
  SplitState state = init_split_state(op, y);
  result.reports.push_back(initial_report(op, state, truth, peak, cfg.compute_ssim));

  Denoiser denoise = [&cfg](const FrameCube& q, int, IterReport&) {
    return cfg.tv_iters == 0 ? q : tv_denoise(q, cfg.tv_weight, cfg.tv_iters);
  };
  run_split_stage(op, cfg.mode, cfg.gamma, cfg.max_iters, cfg.tol, denoise, state,
                  result.reports, truth, cfg.freeze_dual, peak, cfg.compute_ssim);

  result.cube = devectorize(
      std::vector<double>(state.x.data(), state.x.data() + state.x.size()), op.nx(), op.ny(),
      op.frames(), peak);
  return result;
}

}  // namespace sci
