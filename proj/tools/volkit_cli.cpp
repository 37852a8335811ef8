// Command-line driver for the volkit pipeline. Talks to the shared library
// through the public C interface only.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "volkit.h"

namespace {

// 0 success, 1 usage/config error, 2 data error, 3 completed with warnings.
int exit_code_of(volkit_status status) {
  switch (status) {
    case VOLKIT_OK:
      return 0;
    case VOLKIT_ERR_CONFIG:
    case VOLKIT_ERR_INVALID:
      return 1;
    case VOLKIT_ERR_DATA:
      return 2;
    case VOLKIT_WARNINGS:
      return 3;
  }
  return 1;
}

int finish(volkit_ctx* ctx, volkit_status status) {
  if (status == VOLKIT_ERR_CONFIG || status == VOLKIT_ERR_DATA ||
      status == VOLKIT_ERR_INVALID)
    std::fprintf(stderr, "error: %s\n", volkit_ctx_last_error(ctx));
  if (status == VOLKIT_WARNINGS)
    std::fprintf(stderr, "completed with warnings:\n%s", volkit_ctx_warnings(ctx));
  const int code = exit_code_of(status);
  volkit_ctx_free(ctx);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volkit: stochastic-volatility and GARCH estimation with realized-volatility scoring"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the config seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--out", out_dir, "override the output directory");

  auto* simulate = app.add_subcommand("simulate", "generate synthetic data files");
  auto* fit = app.add_subcommand("fit", "run an MCMC fit and write chain, volatility and diagnostics files");
  std::string model = "sv";
  fit->add_option("--model", model, "sv or garch")->required();
  auto* rv = app.add_subcommand("rv", "compute realized volatility per sampling interval");
  auto* evaluate = app.add_subcommand("evaluate", "score fitted models against adjusted realized volatility");
  auto* report = app.add_subcommand("report", "collect pipeline outputs into a run manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors exit with 1
  }

  volkit_ctx* ctx = volkit_ctx_new();
  volkit_status status = volkit_ctx_load_config(ctx, config_path.c_str());
  if (status != VOLKIT_OK) return finish(ctx, status);
  if (seed_set) volkit_ctx_set_seed(ctx, seed);
  if (!out_dir.empty()) volkit_ctx_set_out_dir(ctx, out_dir.c_str());

  char summary[8192] = {0};
  if (simulate->parsed()) {
    status = volkit_cmd_simulate(ctx);
  } else if (fit->parsed()) {
    status = volkit_cmd_fit(ctx, model.c_str());
  } else if (rv->parsed()) {
    status = volkit_cmd_rv(ctx);
  } else if (evaluate->parsed()) {
    status = volkit_cmd_evaluate(ctx, summary, sizeof(summary));
    std::fputs(summary, stdout);
  } else if (report->parsed()) {
    status = volkit_cmd_report(ctx, summary, sizeof(summary));
    std::fputs(summary, stdout);
  }
  return finish(ctx, status);
}
