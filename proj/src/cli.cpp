#include "sci/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sci/baseline_tv.hpp"
#include "sci/cube_io.hpp"
#include "sci/metrics.hpp"
#include "sci/sensing.hpp"
#include "sci/solver.hpp"
#include "sci/synthetic.hpp"

namespace fs = std::filesystem;

namespace sci {

namespace {

const std::set<std::string> kKnownKeys = {
    // scene / simulation
    "nx", "ny", "frames", "peak", "scene", "truth", "seed", "snr_db",
    "mask_density", "mask_shift", "mask_dispersion", "out_dir",
    // reconstruction
    "manifest", "masks", "measurement", "algorithm", "mode", "gamma",
    "sigma0", "sigma_halvings", "stage_iters", "tol", "c",
    "rematch_every", "search_l", "search_h", "stride", "patch_side", "group_m",
    "tv_weight", "tv_iters",
    "recon_out", "telemetry", "dump_frames", "threads",
    // manifest-only keys (simulate writes, reconstruct reads)
    "noise_sigma", "empirical_snr_db",
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  if (!kKnownKeys.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  entries_[key] = value;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

std::string Config::require_str(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::invalid_argument("config key '" + key + "' is required");
  return it->second;
}

double Config::get_num(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::size_t used = 0;
  double v = std::stod(it->second, &used);
  if (used != it->second.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" + it->second + "'");
  return v;
}

int Config::get_int(const std::string& key, int fallback) const {
  const double v = get_num(key, fallback);
  if (v != std::floor(v)) throw std::invalid_argument("config key '" + key + "' must be integer");
  return static_cast<int>(v);
}

std::optional<double> Config::get_opt(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_num(key, 0.0);
}

std::pair<int, int> Config::get_pair(const std::string& key, std::pair<int, int> fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const auto comma = it->second.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("config key '" + key + "' expects 'a,b'");
  return {std::stoi(trim(it->second.substr(0, comma))),
          std::stoi(trim(it->second.substr(comma + 1)))};
}

namespace {

void apply_threads(std::optional<int> threads, const Config& cfg) {
  int n = threads.value_or(cfg.get_int("threads", 0));
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

FrameCube scene_from_config(const Config& cfg) {
  const int nx = cfg.get_int("nx", 32);
  const int ny = cfg.get_int("ny", 32);
  const int nb = cfg.get_int("frames", 8);
  const double peak = cfg.get_num("peak", 255.0);
  const std::string scene = cfg.get_str("scene", "");
  if (cfg.has("truth")) return load_cube(cfg.require_str("truth"));
  if (scene == "moving_square") return make_moving_square_scene(nx, ny, nb, peak);
  if (scene == "spectral_blobs") return make_spectral_scene(nx, ny, nb, peak);
  throw std::invalid_argument("set scene=moving_square|spectral_blobs or truth=<cube>");
}

void write_manifest(const std::string& path, const std::map<std::string, std::string>& kv) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_telemetry(const std::string& path, const std::vector<IterReport>& reports) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "iteration,sigma,residual,rel_change,psnr,ssim,rematched\n";
  for (const IterReport& r : reports) {
    out << r.iteration << "," << fmt(r.sigma_n) << "," << fmt(r.residual) << ",";
    if (std::isfinite(r.rel_change)) out << fmt(r.rel_change);
    out << ",";
    if (r.psnr) out << fmt(*r.psnr);
    out << ",";
    if (r.ssim) out << fmt(*r.ssim);
    out << "," << (r.rematched ? 1 : 0) << "\n";
  }
}

int guard(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int cmd_simulate(const std::string& config_path, const CliOverrides& over) {
  return guard([&] {
    Config cfg = Config::from_file(config_path);
    apply_threads(over.threads, cfg);

    const FrameCube truth = scene_from_config(cfg);
    const long seed = over.seed.value_or(long(cfg.get_num("seed", 1)));
    const double density = cfg.get_num("mask_density", 0.5);

    MaskCube masks;
    if (cfg.has("mask_dispersion")) {
      auto [di, dj] = cfg.get_pair("mask_dispersion", {0, 1});
      masks = gen_spectral_shift_masks(truth.nx, truth.ny, truth.nb, density,
                                       std::uint64_t(seed), di, dj);
    } else {
      auto [di, dj] = cfg.get_pair("mask_shift", {1, 1});
      masks = gen_shifting_binary_mask(truth.nx, truth.ny, truth.nb, density,
                                       std::uint64_t(seed), di, dj);
    }

    const std::optional<double> snr_db = cfg.get_opt("snr_db");
    std::optional<double> sigma;
    if (snr_db) {
      SensingOperator clean_op(masks);
      sigma = sigma_for_snr(clean_op, truth, *snr_db);
    }
    SensingOperator op(masks, sigma);

    std::mt19937_64 rng(std::uint64_t(seed) ^ 0x9e3779b97f4a7c15ull);
    const Measurement clean = forward(op, truth);
    const Measurement meas = snr_db ? forward(op, truth, rng) : clean;

    const fs::path dir = cfg.get_str("out_dir", "sim_out");
    fs::create_directories(dir);
    save_cube(truth, (dir / "truth.scicube").string(), CubeDType::f32);
    save_cube(masks, (dir / "mask.scicube").string(), CubeDType::f32);
    save_measurement(meas, (dir / "measurement.scicube").string(), CubeDType::f64);

    std::map<std::string, std::string> manifest = {
        {"masks", (dir / "mask.scicube").string()},
        {"measurement", (dir / "measurement.scicube").string()},
        {"truth", (dir / "truth.scicube").string()},
        {"seed", std::to_string(seed)},
        {"peak", fmt(truth.peak)},
    };
    if (snr_db) {
      manifest["snr_db"] = fmt(*snr_db);
      manifest["noise_sigma"] = fmt(*sigma);
      manifest["empirical_snr_db"] = fmt(empirical_snr_db(meas, clean));
    }
    write_manifest((dir / "manifest.txt").string(), manifest);
    std::cout << "wrote " << (dir / "manifest.txt").string() << "\n";
  });
}

int cmd_reconstruct(const std::string& config_path, const CliOverrides& over) {
  return guard([&] {
    Config cfg = Config::from_file(config_path);
    apply_threads(over.threads, cfg);

    std::optional<double> snr_db = cfg.get_opt("snr_db");
    std::string masks_path = cfg.get_str("masks", "");
    std::string meas_path = cfg.get_str("measurement", "");
    std::string truth_path = cfg.get_str("truth", "");
    if (cfg.has("manifest")) {
      Config man = Config::from_file(cfg.require_str("manifest"));
      masks_path = man.get_str("masks", masks_path);
      meas_path = man.get_str("measurement", meas_path);
      truth_path = man.get_str("truth", truth_path);
      if (!snr_db) snr_db = man.get_opt("snr_db");
    }
    if (masks_path.empty() || meas_path.empty())
      throw std::invalid_argument("need masks= and measurement= (or manifest=)");

    MaskCube masks{{load_cube(masks_path)}};
    const Measurement meas = load_measurement(meas_path);
    SensingOperator op(masks);

    std::optional<FrameCube> truth;
    if (!truth_path.empty()) truth = load_cube(truth_path);

    const std::string algorithm = over.algorithm.value_or(cfg.get_str("algorithm", "desci"));
    std::string mode_name = over.mode.value_or(cfg.get_str("mode", "auto"));
    SolverMode mode;
    if (mode_name == "auto")
      mode = resolve_mode(snr_db);
    else if (mode_name == "admm")
      mode = SolverMode::admm;
    else if (mode_name == "gap")
      mode = SolverMode::gap;
    else if (mode_name == "gap-acc")
      mode = SolverMode::gap_acc;
    else
      throw std::invalid_argument("unknown mode '" + mode_name + "'");
    const double gamma =
        cfg.has("gamma") ? cfg.get_num("gamma", 0.0)
                         : (mode == SolverMode::admm ? gamma_for_snr(snr_db) : 0.0);

    SolveResult result;
    if (algorithm == "desci") {
      SolverConfig scfg;
      scfg.mode = mode;
      scfg.gamma = gamma;
      scfg.c = cfg.get_num("c", 2.8);
      scfg.stage_iters = cfg.get_int("stage_iters", 60);
      scfg.sigma_schedule =
          sigma_schedule_default(cfg.get_num("sigma0", 100.0), cfg.get_int("sigma_halvings", 3));
      scfg.tol = cfg.get_num("tol", 1e-4);
      scfg.rematch_every = cfg.get_int("rematch_every", 20);
      scfg.search_l = cfg.get_int("search_l", 30);
      scfg.search_h = cfg.get_int("search_h", 8);
      scfg.stride = cfg.get_int("stride", 0);
      scfg.patch_side_override = cfg.get_int("patch_side", 0);
      scfg.group_m_override = cfg.get_int("group_m", 0);
      result = desci_run(op, meas, scfg, truth ? &*truth : nullptr);
    } else if (algorithm == "gap-tv") {
      GapTvConfig tcfg;
      tcfg.mode = mode == SolverMode::admm ? SolverMode::admm : mode;
      tcfg.gamma = mode == SolverMode::admm ? gamma : 0.0;
      tcfg.max_iters = cfg.get_int("stage_iters", 60);
      tcfg.tol = cfg.get_num("tol", 1e-4);
      tcfg.tv_weight = cfg.get_num("tv_weight", tcfg.tv_weight);
      tcfg.tv_iters = cfg.get_int("tv_iters", tcfg.tv_iters);
      result = gaptv_run(op, meas, tcfg, truth ? &*truth : nullptr);
    } else {
      throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    }

    const std::string recon_out = cfg.get_str("recon_out", "recon.scicube");
    const std::string telemetry = cfg.get_str("telemetry", "telemetry.csv");
    result.cube.peak = truth ? truth->peak : cfg.get_num("peak", 255.0);
    save_cube(result.cube, recon_out, CubeDType::f64);
    write_telemetry(telemetry, result.reports);

    if (over.dump_frames.value_or(cfg.get_int("dump_frames", 0) != 0)) {
      const fs::path dir = fs::path(recon_out).parent_path() / "frames";
      fs::create_directories(dir);
      for (int k = 0; k < result.cube.nb; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%03d.png", k);
        save_frame_png(result.cube, k, (dir / name).string());
      }
    }
    std::cout << "wrote " << recon_out << " and " << telemetry << "\n";
  });
}

int cmd_score(const std::string& recon_path, const std::string& truth_path,
              const std::string& csv_path) {
  return guard([&] {
    const FrameCube recon = load_cube(recon_path);
    const FrameCube truth = load_cube(truth_path);
    const FrameScores p = psnr(recon, truth, truth.peak);
    const FrameScores s = ssim(recon, truth, truth.peak);

    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write " + csv_path);
    out << "frame,psnr,ssim\n";
    for (int k = 0; k < recon.nb; ++k)
      out << k << "," << fmt(p.per_frame[k]) << "," << fmt(s.per_frame[k]) << "\n";
    out << "mean," << fmt(p.mean) << "," << fmt(s.mean) << "\n";
    std::cout << "PSNR " << p.mean << " dB, SSIM " << s.mean << "\n";
  });
}

}  // namespace sci
