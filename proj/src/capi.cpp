#include "volkit.h"

#include <cstring>
#include <sstream>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "pipeline.hpp"

using namespace volkit;

struct volkit_ctx {
  RunConfig config;
  bool config_loaded = false;
  std::optional<uint64_t> seed_override;
  std::optional<std::string> out_dir_override;
  std::string last_error;
  std::string warnings;

  RunConfig effective_config() const {
    RunConfig cfg = config;
    if (seed_override) cfg.seed = *seed_override;
    if (out_dir_override) cfg.out_dir = *out_dir_override;
    return cfg;
  }
};

struct volkit_series {
  ReturnSeries series;
};

struct volkit_fit {
  std::string model;
  // Named parameter traces summarized to mean/sd.
  std::vector<std::pair<std::string, RunningMoments>> params;
  std::vector<RunningMoments> vol;
};

namespace {

template <typename Fn>
volkit_status guarded(volkit_ctx* ctx, Fn&& fn) {
  if (!ctx) return VOLKIT_ERR_INVALID;
  ctx->last_error.clear();
  try {
    return fn();
  } catch (const ConfigError& e) {
    ctx->last_error = e.what();
    return VOLKIT_ERR_CONFIG;
  } catch (const DataError& e) {
    ctx->last_error = e.what();
    return VOLKIT_ERR_DATA;
  } catch (const ContractError& e) {
    ctx->last_error = e.what();
    return VOLKIT_ERR_CONFIG;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return VOLKIT_ERR_DATA;
  }
}

volkit_status finish_command(volkit_ctx* ctx, const CommandResult& result) {
  std::string joined;
  for (const auto& w : result.warnings) {
    joined += w;
    joined += '\n';
  }
  ctx->warnings = joined;
  return result.ok() ? VOLKIT_OK : VOLKIT_WARNINGS;
}

void copy_out(const std::string& text, char* buf, size_t buf_len) {
  if (!buf || buf_len == 0) return;
  const size_t n = std::min(text.size(), buf_len - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

RunningMoments moments_of(const std::vector<double>& trace) {
  RunningMoments m;
  for (double v : trace) m.add(v);
  return m;
}

}  // namespace

extern "C" {

const char* volkit_version(void) { return "0.1.0"; }

volkit_ctx* volkit_ctx_new(void) { return new volkit_ctx(); }

void volkit_ctx_free(volkit_ctx* ctx) { delete ctx; }

const char* volkit_ctx_last_error(const volkit_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

const char* volkit_ctx_warnings(const volkit_ctx* ctx) {
  return ctx ? ctx->warnings.c_str() : "";
}

volkit_status volkit_ctx_load_config(volkit_ctx* ctx, const char* path) {
  return guarded(ctx, [&]() -> volkit_status {
    if (!path) return VOLKIT_ERR_INVALID;
    ctx->config = RunConfig::load(path);
    ctx->config_loaded = true;
    return VOLKIT_OK;
  });
}

volkit_status volkit_ctx_set_seed(volkit_ctx* ctx, uint64_t seed) {
  return guarded(ctx, [&]() -> volkit_status {
    ctx->seed_override = seed;
    return VOLKIT_OK;
  });
}

volkit_status volkit_ctx_set_out_dir(volkit_ctx* ctx, const char* dir) {
  return guarded(ctx, [&]() -> volkit_status {
    if (!dir || !*dir) return VOLKIT_ERR_INVALID;
    ctx->out_dir_override = dir;
    return VOLKIT_OK;
  });
}

volkit_status volkit_cmd_simulate(volkit_ctx* ctx) {
  return guarded(ctx, [&]() -> volkit_status {
    return finish_command(ctx, cmd_simulate(ctx->effective_config()));
  });
}

volkit_status volkit_cmd_fit(volkit_ctx* ctx, const char* model) {
  return guarded(ctx, [&]() -> volkit_status {
    if (!model) return VOLKIT_ERR_INVALID;
    return finish_command(ctx, cmd_fit(ctx->effective_config(), model));
  });
}

volkit_status volkit_cmd_rv(volkit_ctx* ctx) {
  return guarded(ctx, [&]() -> volkit_status {
    return finish_command(ctx, cmd_rv(ctx->effective_config()));
  });
}

volkit_status volkit_cmd_evaluate(volkit_ctx* ctx, char* summary, size_t summary_len) {
  return guarded(ctx, [&]() -> volkit_status {
    std::ostringstream out;
    const auto result = cmd_evaluate(ctx->effective_config(), out);
    copy_out(out.str(), summary, summary_len);
    return finish_command(ctx, result);
  });
}

volkit_status volkit_cmd_report(volkit_ctx* ctx, char* summary, size_t summary_len) {
  return guarded(ctx, [&]() -> volkit_status {
    std::ostringstream out;
    const auto result = cmd_report(ctx->effective_config(), out);
    copy_out(out.str(), summary, summary_len);
    return finish_command(ctx, result);
  });
}

volkit_status volkit_series_load(volkit_ctx* ctx, const char* csv_path,
                                 volkit_series** out) {
  return guarded(ctx, [&]() -> volkit_status {
    if (!csv_path || !out) return VOLKIT_ERR_INVALID;
    auto series = std::make_unique<volkit_series>();
    series->series = load_daily_returns(csv_path);
    *out = series.release();
    return VOLKIT_OK;
  });
}

void volkit_series_free(volkit_series* s) { delete s; }

size_t volkit_series_length(const volkit_series* s) {
  return s ? s->series.size() : 0;
}

volkit_status volkit_series_value(const volkit_series* s, size_t i, double* out) {
  if (!s || !out || i >= s->series.size()) return VOLKIT_ERR_INVALID;
  *out = s->series.values[i];
  return VOLKIT_OK;
}

volkit_status volkit_series_date(const volkit_series* s, size_t i, char* buf,
                                 size_t buf_len) {
  if (!s || !buf || i >= s->series.size()) return VOLKIT_ERR_INVALID;
  const std::string text = s->series.dates[i].str();
  if (buf_len <= text.size()) return VOLKIT_ERR_INVALID;
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return VOLKIT_OK;
}

volkit_status volkit_fit_run(volkit_ctx* ctx, const volkit_series* s,
                             const char* model, volkit_fit** out) {
  return guarded(ctx, [&]() -> volkit_status {
    if (!s || !model || !out) return VOLKIT_ERR_INVALID;
    const RunConfig cfg = ctx->effective_config();
    auto fit = std::make_unique<volkit_fit>();
    fit->model = model;
    if (fit->model == "sv") {
      Rng rng = cfg.hmc_seed ? Rng(*cfg.hmc_seed) : Rng(cfg.seed).substream("sv");
      const SvChain chain = run_sv_fit(s->series, cfg.sv.priors, cfg.hmc,
                                       cfg.sv.n_burn, cfg.sv.n_keep, rng, {});
      fit->params = {{"mu", moments_of(chain.mu)},
                     {"phi", moments_of(chain.phi)},
                     {"sigma_eta_sq", moments_of(chain.sigma_eta_sq)}};
      fit->vol = chain.exp_h;
    } else if (fit->model == "garch") {
      Rng rng = Rng(cfg.seed).substream("garch");
      const GarchChain chain =
          run_garch_fit(s->series, GarchPriors{}, cfg.garch.n_burn, cfg.garch.n_keep, rng);
      fit->params = {{"omega", moments_of(chain.omega)},
                     {"alpha", moments_of(chain.alpha)},
                     {"beta", moments_of(chain.beta)}};
      fit->vol = chain.vol;
    } else {
      throw ConfigError("fit: model must be sv or garch");
    }
    *out = fit.release();
    return VOLKIT_OK;
  });
}

void volkit_fit_free(volkit_fit* f) { delete f; }

volkit_status volkit_fit_param_mean(const volkit_fit* f, const char* name, double* out) {
  if (!f || !name || !out) return VOLKIT_ERR_INVALID;
  for (const auto& [pname, m] : f->params)
    if (pname == name) {
      *out = m.mean;
      return VOLKIT_OK;
    }
  return VOLKIT_ERR_INVALID;
}

volkit_status volkit_fit_param_sd(const volkit_fit* f, const char* name, double* out) {
  if (!f || !name || !out) return VOLKIT_ERR_INVALID;
  for (const auto& [pname, m] : f->params)
    if (pname == name) {
      *out = m.sd();
      return VOLKIT_OK;
    }
  return VOLKIT_ERR_INVALID;
}

volkit_status volkit_fit_vol_mean(const volkit_fit* f, size_t day, double* out) {
  if (!f || !out || day >= f->vol.size()) return VOLKIT_ERR_INVALID;
  *out = f->vol[day].mean;
  return VOLKIT_OK;
}

volkit_status volkit_fit_vol_sd(const volkit_fit* f, size_t day, double* out) {
  if (!f || !out || day >= f->vol.size()) return VOLKIT_ERR_INVALID;
  *out = f->vol[day].sd();
  return VOLKIT_OK;
}

}  // extern "C"
