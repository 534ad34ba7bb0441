#pragma once

#include <map>
#include <optional>
#include <string>

namespace sci {

// Flat key=value configuration ('#' starts a comment). Lookups with a
// typed default; unknown keys are rejected up front so typos fail fast.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_str(const std::string& key, const std::string& fallback) const;
  std::string require_str(const std::string& key) const;
  double get_num(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::optional<double> get_opt(const std::string& key) const;
  // "a,b" pairs, e.g. mask shifts
  std::pair<int, int> get_pair(const std::string& key, std::pair<int, int> fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

struct CliOverrides {
  std::optional<std::string> algorithm;  // desci | gap-tv
  std::optional<std::string> mode;       // admm | gap | gap-acc | auto
  std::optional<int> threads;
  std::optional<bool> dump_frames;
  std::optional<long> seed;
};

// Exit codes: 0 ok, 2 configuration/I-O error, 3 numeric failure.
int cmd_simulate(const std::string& config_path, const CliOverrides& over);
int cmd_reconstruct(const std::string& config_path, const CliOverrides& over);
int cmd_score(const std::string& recon_path, const std::string& truth_path,
              const std::string& csv_path);

}  // namespace sci
