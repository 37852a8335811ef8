#pragma once

#include <utility>
#include <vector>

#include "garch.hpp"
#include "rng.hpp"
#include "sv_model.hpp"
#include "timeseries.hpp"

namespace volkit {

// Consecutive weekdays starting at `start`.
std::vector<Date> trading_dates(Date start, size_t n_days);

struct SvGenSpec {
  SvParams params;
  size_t n_days = 0;
  Date start{2000, 1, 3};
  std::string label = "synth-sv";
};

struct SvTruth {
  std::vector<double> h;  // true latent log-variances
};

// Simulates the SV recursion: h_1 from the stationary law, then the AR(1)
// forward pass; y_t = exp(h_t/2) eps_t.
std::pair<ReturnSeries, SvTruth> gen_sv(const SvGenSpec& spec, Rng& rng);

struct GarchGenSpec {
  GarchParams params;
  size_t n_days = 0;
  Date start{2000, 1, 3};
  std::string label = "synth-garch";
};

ReturnSeries gen_garch(const GarchGenSpec& spec, Rng& rng);

// Intraday log-price diffusion with constant spot volatility within a day.
// A share of each day's variance sits in the overnight gap; the rest
// diffuses through the sessions in 1-second Euler steps. Observed tick
// prices optionally carry additive i.i.d. Gaussian log-price noise.
struct IntradaySpec {
  SessionCalendar calendar;  // empty -> default two-session calendar
  int tick_interval_sec = 60;
  double noise_std = 0.0;        // sd of log-price observation noise
  double overnight_share = 0.5;  // in [0, 1)
  void validate() const;
};

struct IntradayDayResult {
  IntradayDay day;
  double implied_return = 0.0;  // observed close-to-close log-return
};

// Carries the previous day's closes (log scale) so consecutive days chain
// exactly; the true path stays free of observation noise.
struct IntradayGenState {
  double true_log_close = 0.0;
  double obs_log_close = 0.0;
};

// One simulated day, for streaming long panels without holding them all.
IntradayDayResult gen_intraday_day(const IntradaySpec& spec, Date date,
                                   double day_variance, IntradayGenState& state,
                                   Rng& rng);

struct IntradayResult {
  IntradayPanel panel;
  ReturnSeries implied_daily;  // close-to-close returns of the observed path
};

// Whole-panel generation from per-day target variances (e.g. exp(h_t) of an
// SV truth path). Day k uses the rng sub-stream with index k.
IntradayResult gen_intraday(const IntradaySpec& spec, const std::vector<Date>& dates,
                            std::span<const double> day_variances, Rng& rng);

}  // namespace volkit
