/* volkit — Bayesian volatility estimation toolkit.
 *
 * C interface to the shared library: opaque handles plus status codes.
 * Every function that can fail returns a volkit_status; the human-readable
 * message for the most recent failure is kept on the context handle.
 *
 * Handles returned by *_new/*_load/*_run functions are owned by the caller
 * and released with the matching *_free. A context must outlive the
 * handles created through it.
 */
#ifndef VOLKIT_H
#define VOLKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VOLKIT_API __declspec(dllexport)
#else
#define VOLKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum volkit_status {
  VOLKIT_OK = 0,
  VOLKIT_ERR_CONFIG = 1,   /* bad configuration or usage */
  VOLKIT_ERR_DATA = 2,     /* bad or missing input data */
  VOLKIT_WARNINGS = 3,     /* completed, warnings recorded on the context */
  VOLKIT_ERR_INVALID = 4   /* null/invalid handle or argument */
} volkit_status;

typedef struct volkit_ctx volkit_ctx;       /* config + error state */
typedef struct volkit_series volkit_series; /* daily return series */
typedef struct volkit_fit volkit_fit;       /* posterior fit result */

VOLKIT_API const char* volkit_version(void);

/* ---- context ---- */

VOLKIT_API volkit_ctx* volkit_ctx_new(void);
VOLKIT_API void volkit_ctx_free(volkit_ctx* ctx);

/* Message of the most recent error (empty string if none). */
VOLKIT_API const char* volkit_ctx_last_error(const volkit_ctx* ctx);
/* Warnings of the most recent command, one per line (empty if none). */
VOLKIT_API const char* volkit_ctx_warnings(const volkit_ctx* ctx);

VOLKIT_API volkit_status volkit_ctx_load_config(volkit_ctx* ctx, const char* path);
VOLKIT_API volkit_status volkit_ctx_set_seed(volkit_ctx* ctx, uint64_t seed);
VOLKIT_API volkit_status volkit_ctx_set_out_dir(volkit_ctx* ctx, const char* dir);

/* ---- pipeline commands (mirror the CLI subcommands) ---- */

VOLKIT_API volkit_status volkit_cmd_simulate(volkit_ctx* ctx);
/* model: "sv" or "garch" */
VOLKIT_API volkit_status volkit_cmd_fit(volkit_ctx* ctx, const char* model);
VOLKIT_API volkit_status volkit_cmd_rv(volkit_ctx* ctx);
/* Winner-per-interval summary is appended to `summary` (may be NULL). */
VOLKIT_API volkit_status volkit_cmd_evaluate(volkit_ctx* ctx, char* summary,
                                             size_t summary_len);
VOLKIT_API volkit_status volkit_cmd_report(volkit_ctx* ctx, char* summary,
                                           size_t summary_len);

/* ---- daily return series ---- */

VOLKIT_API volkit_status volkit_series_load(volkit_ctx* ctx, const char* csv_path,
                                            volkit_series** out);
VOLKIT_API void volkit_series_free(volkit_series* s);
VOLKIT_API size_t volkit_series_length(const volkit_series* s);
VOLKIT_API volkit_status volkit_series_value(const volkit_series* s, size_t i,
                                             double* out);
/* ISO date of observation i; buf_len must cover "YYYY-MM-DD" + NUL. */
VOLKIT_API volkit_status volkit_series_date(const volkit_series* s, size_t i,
                                            char* buf, size_t buf_len);

/* ---- model fits on a loaded series ---- */

/* Runs the configured sampler for "sv" or "garch" on the series. */
VOLKIT_API volkit_status volkit_fit_run(volkit_ctx* ctx, const volkit_series* s,
                                        const char* model, volkit_fit** out);
VOLKIT_API void volkit_fit_free(volkit_fit* f);

/* Posterior mean / sd of a named parameter. SV: "mu", "phi",
 * "sigma_eta_sq"; GARCH: "omega", "alpha", "beta". */
VOLKIT_API volkit_status volkit_fit_param_mean(const volkit_fit* f, const char* name,
                                               double* out);
VOLKIT_API volkit_status volkit_fit_param_sd(const volkit_fit* f, const char* name,
                                             double* out);
/* Posterior mean / sd of the daily variance for day index (0-based). */
VOLKIT_API volkit_status volkit_fit_vol_mean(const volkit_fit* f, size_t day,
                                             double* out);
VOLKIT_API volkit_status volkit_fit_vol_sd(const volkit_fit* f, size_t day,
                                           double* out);

#ifdef __cplusplus
}
#endif

#endif /* VOLKIT_H */
