#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sci/cube.hpp"
#include "sci/sensing.hpp"

namespace sci {

enum class SolverMode { admm, gap, gap_acc };

struct SolverConfig {
  SolverMode mode = SolverMode::gap;
  double gamma = 0.0;  // 0 exactly in GAP modes
  double c = 2.8;
  int stage_iters = 60;  // Max-Iter per sigma stage
  std::vector<double> sigma_schedule;
  double tol = 1e-4;  // relative-change stop, advances the stage
  int rematch_every = 20;
  int search_l = 30;
  int search_h = 8;
  int stride = 0;              // 0 -> patch_side - 1
  int patch_side_override = 0; // 0 -> per-sigma table
  int group_m_override = 0;    // 0 -> per-sigma table
  bool freeze_dual = false;    // diagnostic: skip the multiplier update
  bool compute_ssim = true;    // per-iteration SSIM when truth is given

  SolverConfig();
};

struct IterReport {
  int iteration = 0;
  double sigma_n = 0.0;
  double residual = 0.0;           // ||y - Phi x||_2 at the current estimate
  double proj_residual_inf = 0.0;  // ||y - Phi theta||_inf right after projection
  double rel_change = std::numeric_limits<double>::quiet_NaN();
  bool rematched = false;
  std::optional<double> psnr;
  std::optional<double> ssim;
};

struct SolveResult {
  FrameCube cube;
  std::vector<IterReport> reports;
};

// sigma stages halving from `initial`: 100, 50, 25, 12.5 by default.
std::vector<double> sigma_schedule_default(double initial = 100.0, int halvings = 3);

// {patch_side, group_M} banded by noise level.
std::pair<int, int> params_for_sigma(double sigma_n);

// Coupling weight by measurement SNR bucket; no SNR means noiseless and
// returns 0 (GAP).
double gamma_for_snr(std::optional<double> snr_db);

// Auto mode selection: noiseless -> GAP, SNR > 30 dB -> accelerated GAP,
// otherwise ADMM.
SolverMode resolve_mode(std::optional<double> snr_db);

SolveResult desci_run(const SensingOperator& op, const Measurement& y,
                      const SolverConfig& cfg, const FrameCube* truth = nullptr);

// --- generic split loop, shared with the TV baseline -------------------

// Splitting state threaded through the stages: the signal estimate x, the
// ADMM multiplier b (identically zero in GAP modes) and the accelerated-GAP
// running measurement. theta and q = theta - b are formed on demand inside
// each iteration.
struct SplitState {
  Eigen::VectorXd x;
  Eigen::VectorXd b;
  Eigen::VectorXd y_running;
  Eigen::VectorXd y;  // measurement as a vector
  int iteration = 0;
};

SplitState init_split_state(const SensingOperator& op, const Measurement& y);

// The denoiser sees q = theta - b and may stamp sigma_n / rematched on
// the report.
using Denoiser = std::function<FrameCube(const FrameCube& q, int iteration, IterReport& rep)>;

// Runs `iters` iterations of (projection, denoise[, dual update]);
// stops early once the relative change drops below tol. Appends one
// report per iteration and returns true on early stop.
bool run_split_stage(const SensingOperator& op, SolverMode mode, double gamma, int iters,
                     double tol, const Denoiser& denoise, SplitState& state,
                     std::vector<IterReport>& reports, const FrameCube* truth,
                     bool freeze_dual, double peak, bool compute_ssim);

IterReport initial_report(const SensingOperator& op, const SplitState& state,
                          const FrameCube* truth, double peak, bool compute_ssim);

}  // namespace sci
