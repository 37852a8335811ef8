#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "garch.hpp"
#include "hmc.hpp"
#include "sv_fit.hpp"
#include "synth.hpp"
#include "timeseries.hpp"

namespace volkit {

// Minimal INI reader: [section] headers, key = value pairs, '#'/';'
// comments. Every key must be consumed by the config loader; leftovers are
// reported as configuration errors so typos never pass silently.
class IniFile {
 public:
  static IniFile load(const std::filesystem::path& path);
  static IniFile parse_text(const std::string& text, std::string origin);

  std::optional<std::string> take(const std::string& section, const std::string& key);
  std::vector<std::string> unconsumed() const;
  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  // section -> key -> (value, consumed)
  std::map<std::string, std::map<std::string, std::pair<std::string, bool>>> values_;
};

struct DataConfig {
  std::string daily_csv;     // empty -> <out_dir>/daily.csv
  std::string intraday_csv;  // empty -> <out_dir>/intraday.csv
  std::string label;
  SessionCalendar sessions;  // empty -> default two-session calendar
};

struct SynthConfig {
  std::string kind = "sv";  // sv | garch | diffusion
  size_t n_days = 2000;
  Date start{2000, 1, 3};
  SvParams sv{-7.87, 0.975, 0.045};
  GarchParams garch{1e-6, 0.1, 0.85};
  bool with_intraday = false;
  int tick_interval_sec = 60;
  double noise_std = 0.0;
  double overnight_share = 0.5;
  double day_variance = 0.0;  // diffusion kind: constant daily variance
};

struct SvFitConfig {
  size_t n_burn = 10000;
  size_t n_keep = 40000;
  SvPriors priors;
  std::vector<size_t> h_trace_days = {10};  // 1-based day indices
};

struct GarchFitConfig {
  size_t n_burn = 10000;
  size_t n_keep = 40000;
};

struct RvConfig {
  std::vector<double> deltas_min = {1, 2, 3, 5, 10, 15, 20};
};

struct EvalConfig {
  std::vector<double> deltas_min;  // empty -> the [rv] list
  std::vector<std::string> models = {"sv", "garch"};
};

struct RunConfig {
  uint64_t seed = 1;
  std::string out_dir = "out";

  DataConfig data;
  SynthConfig synth;
  SvFitConfig sv;
  HmcConfig hmc;
  std::optional<uint64_t> hmc_seed;
  GarchFitConfig garch;
  RvConfig rv;
  EvalConfig eval;

  static RunConfig load(const std::filesystem::path& path);
  static RunConfig from_ini(IniFile ini);

  // Parameter-range validation (model invariants, list contents). File
  // existence is checked by the command that consumes the file.
  void validate() const;

  std::filesystem::path daily_path() const;
  std::filesystem::path intraday_path() const;
};

}  // namespace volkit
