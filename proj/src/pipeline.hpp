#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "evaluate.hpp"

namespace volkit {

struct CommandResult {
  std::vector<std::string> warnings;
  bool ok() const { return warnings.empty(); }
};

// Pipeline stages behind the CLI subcommands. Each stage reads its inputs
// from the configured paths, writes its outputs under out_dir atomically
// and throws ConfigError / DataError on failure.
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_fit(const RunConfig& cfg, const std::string& model);
CommandResult cmd_rv(const RunConfig& cfg);
CommandResult cmd_evaluate(const RunConfig& cfg, std::ostream& out);
CommandResult cmd_report(const RunConfig& cfg, std::ostream& out);

// Output locations under cfg.out_dir.
std::filesystem::path truth_path(const RunConfig& cfg);
std::filesystem::path chain_path(const RunConfig& cfg, const std::string& model);
std::filesystem::path vol_path(const RunConfig& cfg, const std::string& model);
std::filesystem::path diagnostics_path(const RunConfig& cfg, const std::string& model);
std::filesystem::path rv_path(const RunConfig& cfg, double delta_min);
std::filesystem::path signature_path(const RunConfig& cfg);
std::filesystem::path scores_path(const RunConfig& cfg);
std::filesystem::path manifest_path(const RunConfig& cfg);

// Readers for the emitted artifacts (used by evaluate/report and tests).
VolPath load_vol_csv(const std::filesystem::path& path);
RvSeries load_rv_csv(const std::filesystem::path& path, double delta_min);

}  // namespace volkit
