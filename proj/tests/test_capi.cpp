// Exercises the shared library strictly through the public C interface.
#include "volkit.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "volkit_capi" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_config(const std::filesystem::path& dir) {
  const auto path = dir / "run.ini";
  std::ofstream out(path);
  out << "seed = 2718\n"
      << "out_dir = " << (dir / "out").string() << "\n"
      << "[synth]\n"
      << "kind = sv\n"
      << "n_days = 100\n"
      << "with_intraday = true\n"
      << "tick_interval_sec = 60\n"
      << "[sv]\n"
      << "n_burn = 100\n"
      << "n_keep = 300\n"
      << "[garch]\n"
      << "n_burn = 200\n"
      << "n_keep = 400\n"
      << "[rv]\n"
      << "deltas = 5\n";
  return path;
}

}  // namespace

TEST_CASE("version string is available") {
  CHECK(std::strlen(volkit_version()) > 0);
}

TEST_CASE("config errors surface through the status and message") {
  volkit_ctx* ctx = volkit_ctx_new();
  REQUIRE(ctx != nullptr);
  CHECK(volkit_ctx_load_config(ctx, "/does/not/exist.ini") == VOLKIT_ERR_CONFIG);
  CHECK(std::string(volkit_ctx_last_error(ctx)).find("exist.ini") != std::string::npos);
  volkit_ctx_free(ctx);
}

TEST_CASE("null and invalid arguments are rejected") {
  CHECK(volkit_ctx_load_config(nullptr, "x") == VOLKIT_ERR_INVALID);
  CHECK(volkit_series_length(nullptr) == 0);
  double v = 0;
  CHECK(volkit_series_value(nullptr, 0, &v) == VOLKIT_ERR_INVALID);

  volkit_ctx* ctx = volkit_ctx_new();
  CHECK(volkit_ctx_set_out_dir(ctx, "") == VOLKIT_ERR_INVALID);
  volkit_series* series = nullptr;
  CHECK(volkit_series_load(ctx, "/missing/daily.csv", &series) == VOLKIT_ERR_DATA);
  volkit_ctx_free(ctx);
}

TEST_CASE("full pipeline through the C interface") {
  const auto dir = fresh_dir("pipeline");
  const auto config = write_config(dir);

  volkit_ctx* ctx = volkit_ctx_new();
  REQUIRE(volkit_ctx_load_config(ctx, config.string().c_str()) == VOLKIT_OK);

  CHECK(volkit_cmd_simulate(ctx) == VOLKIT_OK);
  CHECK(volkit_cmd_fit(ctx, "sv") == VOLKIT_OK);
  CHECK(volkit_cmd_fit(ctx, "garch") == VOLKIT_OK);
  CHECK(volkit_cmd_rv(ctx) == VOLKIT_OK);

  char summary[4096] = {0};
  CHECK(volkit_cmd_evaluate(ctx, summary, sizeof(summary)) == VOLKIT_OK);
  CHECK(std::string(summary).find("lowest rmspe") != std::string::npos);

  char report[4096] = {0};
  CHECK(volkit_cmd_report(ctx, report, sizeof(report)) == VOLKIT_OK);
  CHECK(std::filesystem::exists(dir / "out" / "manifest.txt"));

  // Fit returned VOLKIT_ERR_CONFIG for an unknown model.
  CHECK(volkit_cmd_fit(ctx, "arch") == VOLKIT_ERR_CONFIG);

  volkit_ctx_free(ctx);
}

TEST_CASE("series and fit handles expose the posterior") {
  const auto dir = fresh_dir("handles");
  const auto config = write_config(dir);

  volkit_ctx* ctx = volkit_ctx_new();
  REQUIRE(volkit_ctx_load_config(ctx, config.string().c_str()) == VOLKIT_OK);
  REQUIRE(volkit_cmd_simulate(ctx) == VOLKIT_OK);

  const auto daily = (dir / "out" / "daily.csv").string();
  volkit_series* series = nullptr;
  REQUIRE(volkit_series_load(ctx, daily.c_str(), &series) == VOLKIT_OK);
  REQUIRE(series != nullptr);
  CHECK(volkit_series_length(series) == 100);

  double value = 0.0;
  REQUIRE(volkit_series_value(series, 0, &value) == VOLKIT_OK);
  CHECK(value == value);  // finite
  char date[16] = {0};
  REQUIRE(volkit_series_date(series, 0, date, sizeof(date)) == VOLKIT_OK);
  CHECK(std::strlen(date) == 10);
  CHECK(volkit_series_value(series, 100, &value) == VOLKIT_ERR_INVALID);
  CHECK(volkit_series_date(series, 0, date, 5) == VOLKIT_ERR_INVALID);

  volkit_fit* fit = nullptr;
  REQUIRE(volkit_fit_run(ctx, series, "sv", &fit) == VOLKIT_OK);
  REQUIRE(fit != nullptr);

  double mean = 0.0, sd = 0.0;
  REQUIRE(volkit_fit_param_mean(fit, "phi", &mean) == VOLKIT_OK);
  REQUIRE(volkit_fit_param_sd(fit, "phi", &sd) == VOLKIT_OK);
  CHECK(mean > -1.0);
  CHECK(mean < 1.0);
  CHECK(sd > 0.0);
  CHECK(volkit_fit_param_mean(fit, "nope", &mean) == VOLKIT_ERR_INVALID);

  double vol = 0.0;
  REQUIRE(volkit_fit_vol_mean(fit, 0, &vol) == VOLKIT_OK);
  CHECK(vol > 0.0);
  REQUIRE(volkit_fit_vol_sd(fit, 0, &vol) == VOLKIT_OK);
  CHECK(vol >= 0.0);
  CHECK(volkit_fit_vol_mean(fit, 100, &vol) == VOLKIT_ERR_INVALID);

  // Determinism through the C surface: rerunning the same fit gives the
  // same posterior mean.
  volkit_fit* fit2 = nullptr;
  REQUIRE(volkit_fit_run(ctx, series, "sv", &fit2) == VOLKIT_OK);
  double mean2 = 0.0;
  volkit_fit_param_mean(fit2, "phi", &mean2);
  CHECK(mean == mean2);

  volkit_fit_free(fit);
  volkit_fit_free(fit2);
  volkit_series_free(series);
  volkit_ctx_free(ctx);
}

TEST_CASE("seed and output overrides take effect") {
  const auto dir = fresh_dir("overrides");
  const auto config = write_config(dir);

  volkit_ctx* ctx = volkit_ctx_new();
  REQUIRE(volkit_ctx_load_config(ctx, config.string().c_str()) == VOLKIT_OK);
  const auto other = (dir / "other_out").string();
  REQUIRE(volkit_ctx_set_out_dir(ctx, other.c_str()) == VOLKIT_OK);
  REQUIRE(volkit_ctx_set_seed(ctx, 4242) == VOLKIT_OK);
  REQUIRE(volkit_cmd_simulate(ctx) == VOLKIT_OK);
  CHECK(std::filesystem::exists(std::filesystem::path(other) / "daily.csv"));
  volkit_ctx_free(ctx);
}
