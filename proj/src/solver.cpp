#include "sci/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "sci/metrics.hpp"
#include "sci/patching.hpp"
#include "sci/projection.hpp"
#include "sci/wnnm.hpp"

namespace sci {

SolverConfig::SolverConfig() : sigma_schedule(sigma_schedule_default()) {}

std::vector<double> sigma_schedule_default(double initial, int halvings) {
  if (initial <= 0) throw std::invalid_argument("initial sigma must be positive");
  if (halvings < 0) throw std::invalid_argument("halvings must be >= 0");
  std::vector<double> schedule;
  double sigma = initial;
  for (int s = 0; s <= halvings; ++s, sigma /= 2) schedule.push_back(sigma);
  return schedule;
}

std::pair<int, int> params_for_sigma(double sigma_n) {
  if (sigma_n < 0) throw std::invalid_argument("sigma must be >= 0");
  if (sigma_n <= 20) return {6, 70};
  if (sigma_n <= 40) return {7, 90};
  if (sigma_n <= 60) return {8, 120};
  return {9, 140};
}

double gamma_for_snr(std::optional<double> snr_db) {
  if (!snr_db) return 0.0;  // noiseless: GAP
  // nearest bucket over {40, 30, 20, 10, 0} dB
  if (*snr_db >= 35) return 0.24;
  if (*snr_db >= 25) return 1.2;
  if (*snr_db >= 15) return 6.0;
  if (*snr_db >= 5) return 30.0;
  return 150.0;
}

SolverMode resolve_mode(std::optional<double> snr_db) {
  if (!snr_db) return SolverMode::gap;
  return *snr_db > 30 ? SolverMode::gap_acc : SolverMode::admm;
}

SplitState init_split_state(const SensingOperator& op, const Measurement& y) {
  if (y.nx != op.nx() || y.ny != op.ny())
    throw std::invalid_argument("measurement shape does not match operator");
  SplitState state;
  state.y = Eigen::Map<const Eigen::VectorXd>(y.values.data(), y.values.size());
  state.x = adjoint_vec(op, state.y);
  state.b = Eigen::VectorXd::Zero(state.x.size());
  state.y_running = state.y;
  return state;
}

namespace {

void score_against(IterReport& rep, const Eigen::VectorXd& x, const SensingOperator& op,
                   const FrameCube* truth, double peak, bool compute_ssim) {
  if (!truth) return;
  FrameCube est = devectorize(std::vector<double>(x.data(), x.data() + x.size()), op.nx(),
                              op.ny(), op.frames(), peak);
  rep.psnr = psnr(est, *truth, peak).mean;
  if (compute_ssim) rep.ssim = ssim(est, *truth, peak).mean;
}

}  // namespace

IterReport initial_report(const SensingOperator& op, const SplitState& state,
                          const FrameCube* truth, double peak, bool compute_ssim) {
  IterReport rep;
  rep.iteration = 0;
  rep.residual = (state.y - forward_vec(op, state.x)).norm();
  rep.proj_residual_inf = (state.y - forward_vec(op, state.x)).lpNorm<Eigen::Infinity>();
  score_against(rep, state.x, op, truth, peak, compute_ssim);
  return rep;
}

bool run_split_stage(const SensingOperator& op, SolverMode mode, double gamma, int iters,
                     double tol, const Denoiser& denoise, SplitState& state,
                     std::vector<IterReport>& reports, const FrameCube* truth,
                     bool freeze_dual, double peak, bool compute_ssim) {
  const bool admm = mode == SolverMode::admm;
  if (admm && gamma <= 0 && !freeze_dual)
    throw std::invalid_argument("ADMM mode requires gamma > 0");
  if (!admm && gamma != 0)
    throw std::invalid_argument("GAP modes require gamma = 0");

  for (int it = 0; it < iters; ++it) {
    ++state.iteration;
    IterReport rep;
    rep.iteration = state.iteration;

    // data-fidelity half step
    Eigen::VectorXd theta;
    switch (mode) {
      case SolverMode::admm:
        theta = admm_theta_update(state.x, state.b, op, state.y, gamma);
        break;
      case SolverMode::gap:
        theta = gap_project(state.x, op, state.y);
        break;
      case SolverMode::gap_acc: {
        // The running measurement accumulates the deficit of denoised
        // iterates; the adjoint init is not one, so the first iteration
        // projects plainly and accumulation starts at iteration 2.
        if (state.iteration == 1) {
          theta = gap_project(state.x, op, state.y);
        } else {
          GapAccStep step = gap_accelerated_step(state.x, op, state.y, state.y_running);
          theta = std::move(step.x);
          state.y_running = std::move(step.y_running);
        }
        break;
      }
    }
    rep.proj_residual_inf = (state.y - forward_vec(op, theta)).lpNorm<Eigen::Infinity>();

    // prior half step on q = theta - b
    Eigen::VectorXd q = admm ? Eigen::VectorXd(theta - state.b) : theta;
    FrameCube q_cube = devectorize(std::vector<double>(q.data(), q.data() + q.size()),
                                   op.nx(), op.ny(), op.frames(), peak);
    FrameCube est = denoise(q_cube, state.iteration, rep);
    Eigen::Map<const Eigen::VectorXd> x_new(est.values.data(), est.values.size());
    if (!x_new.allFinite()) throw std::runtime_error("solver diverged: non-finite iterate");

    if (admm && !freeze_dual) state.b = admm_dual_update(state.b, theta, x_new);

    const double prev_norm = state.x.norm();
    rep.rel_change = prev_norm > 0 ? (x_new - state.x).norm() / prev_norm
                                   : std::numeric_limits<double>::infinity();
    state.x = x_new;
    rep.residual = (state.y - forward_vec(op, state.x)).norm();
    score_against(rep, state.x, op, truth, peak, compute_ssim);
    reports.push_back(std::move(rep));

    if (reports.back().rel_change < tol) return true;
  }
  return false;
}

namespace {

void validate_config(const SolverConfig& cfg) {
  if (cfg.sigma_schedule.empty()) throw std::invalid_argument("empty sigma schedule");
  for (std::size_t s = 0; s < cfg.sigma_schedule.size(); ++s) {
    if (cfg.sigma_schedule[s] < 0) throw std::invalid_argument("negative sigma in schedule");
    if (s > 0 && cfg.sigma_schedule[s] >= cfg.sigma_schedule[s - 1])
      throw std::invalid_argument("sigma schedule must be strictly descending");
  }
  if (cfg.stage_iters < 1) throw std::invalid_argument("stage_iters must be >= 1");
  if (cfg.c < 0) throw std::invalid_argument("c must be >= 0");
  if (cfg.rematch_every < 1) throw std::invalid_argument("rematch_every must be >= 1");
  if (cfg.mode == SolverMode::admm && cfg.gamma <= 0 && !cfg.freeze_dual)
    throw std::invalid_argument("ADMM mode requires gamma > 0");
  if (cfg.mode != SolverMode::admm && cfg.gamma != 0)
    throw std::invalid_argument("GAP modes require gamma = 0");
}

// Per-stage WNNM denoiser: caches block-matching coordinates and
// refreshes them every rematch_every iterations.
class WnnmStage {
 public:
  WnnmStage(const SolverConfig& cfg, double sigma, int nx, int ny, int nb)
      : sigma_(sigma), c_(cfg.c), rematch_every_(cfg.rematch_every) {
    auto [side, group_m] = params_for_sigma(sigma);
    if (cfg.patch_side_override > 0) side = cfg.patch_side_override;
    if (cfg.group_m_override > 0) group_m = cfg.group_m_override;
    pcfg_.patch_side = side;
    pcfg_.stride = cfg.stride > 0 ? cfg.stride : std::max(side - 1, 1);
    pcfg_.search_l = cfg.search_l;
    pcfg_.search_h = std::min(cfg.search_h, nb);
    pcfg_.group_m = group_m;
    pcfg_.rematch_every = cfg.rematch_every;
    refs_ = reference_grid(nx, ny, nb, pcfg_);
    coords_.resize(refs_.size());
  }

  FrameCube operator()(const FrameCube& q, int iteration, IterReport& rep) {
    if (last_match_ < 0 || iteration - last_match_ >= rematch_every_) {
      rematch(q);
      last_match_ = iteration;
      rep.rematched = true;
    }
    rep.sigma_n = sigma_;

    std::vector<PatchGroup> groups(refs_.size());
    const WnnmParams params{c_, 1e-16, sigma_};
#pragma omp parallel for schedule(dynamic)
    for (long g = 0; g < long(refs_.size()); ++g) {
      groups[g].ref = refs_[g];
      groups[g].coords = coords_[g];
      groups[g].mat =
          denoise_group(extract_patches(q, coords_[g], pcfg_.patch_side), params);
    }
    return aggregate(groups, q.nx, q.ny, q.nb, pcfg_.patch_side, q.peak);
  }

 private:
  void rematch(const FrameCube& q) {
#pragma omp parallel for schedule(dynamic)
    for (long g = 0; g < long(refs_.size()); ++g)
      coords_[g] = block_match_coords(q, refs_[g], pcfg_);
  }

  PatchConfig pcfg_;
  std::vector<PatchCoord> refs_;
  std::vector<std::vector<PatchCoord>> coords_;
  double sigma_;
  double c_;
  int rematch_every_;
  int last_match_ = -1;
};

}  // namespace

SolveResult desci_run(const SensingOperator& op, const Measurement& y,
                      const SolverConfig& cfg, const FrameCube* truth) {
  validate_config(cfg);
  const double peak = truth ? truth->peak : 255.0;

  SolveResult result;
  SplitState state = init_split_state(op, y);
  result.reports.push_back(initial_report(op, state, truth, peak, cfg.compute_ssim));

  for (double sigma : cfg.sigma_schedule) {
    WnnmStage stage(cfg, sigma, op.nx(), op.ny(), op.frames());
    Denoiser denoise = [&stage](const FrameCube& q, int it, IterReport& rep) {
      return stage(q, it, rep);
    };
    run_split_stage(op, cfg.mode, cfg.gamma, cfg.stage_iters, cfg.tol, denoise, state,
                    result.reports, truth, cfg.freeze_dual, peak, cfg.compute_ssim);
  }

  result.cube = devectorize(
      std::vector<double>(state.x.data(), state.x.data() + state.x.size()), op.nx(), op.ny(),
      op.frames(), peak);
  return result;
}

}  // namespace sci
