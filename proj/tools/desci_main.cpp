#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "sci/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Snapshot compressive imaging: simulate, reconstruct (DeSCI / GAP-TV), score"};
  app.require_subcommand(1);

  sci::CliOverrides over;
  std::string config_path, recon_path, truth_path, csv_path = "metrics.csv";
  std::string algorithm, mode;
  int threads = -1;
  bool dump_frames = false;
  long seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (0 = library default)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "generate masks and a coded measurement");
  sim->add_option("--config", config_path, "key=value config file")->required();
  sim->add_option("--seed", seed, "override the config seed");
  add_common(sim);

  CLI::App* rec = app.add_subcommand("reconstruct", "recover the frame cube");
  rec->add_option("--config", config_path, "key=value config file")->required();
  rec->add_option("--algorithm", algorithm, "desci | gap-tv");
  rec->add_option("--mode", mode, "admm | gap | gap-acc | auto");
  rec->add_flag("--dump-frames", dump_frames, "write PNG frames next to the reconstruction");
  add_common(rec);

  CLI::App* score = app.add_subcommand("score", "PSNR/SSIM of a reconstruction");
  score->add_option("recon", recon_path, "reconstructed cube")->required();
  score->add_option("truth", truth_path, "ground-truth cube")->required();
  score->add_option("--out", csv_path, "metrics CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads >= 0) over.threads = threads;
  if (seed >= 0) over.seed = seed;
  if (!algorithm.empty()) over.algorithm = algorithm;
  if (!mode.empty()) over.mode = mode;
  if (dump_frames) over.dump_frames = true;

  if (sim->parsed()) return sci::cmd_simulate(config_path, over);
  if (rec->parsed()) return sci::cmd_reconstruct(config_path, over);
  if (score->parsed()) return sci::cmd_score(recon_path, truth_path, csv_path);
  std::cerr << "no subcommand\n";
  return 2;
}
