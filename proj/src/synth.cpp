#include "synth.hpp"

#include <cmath>

#include "errors.hpp"

namespace volkit {

std::vector<Date> trading_dates(Date start, size_t n_days) {
  if (!start.valid()) throw ContractError("trading dates: invalid start date");
  std::vector<Date> out;
  out.reserve(n_days);
  int64_t civil = start.civil();
  while (out.size() < n_days) {
    const Date d = Date::from_civil(civil);
    if (d.weekday() < 5) out.push_back(d);
    ++civil;
  }
  return out;
}

std::pair<ReturnSeries, SvTruth> gen_sv(const SvGenSpec& spec, Rng& rng) {
  const auto& p = spec.params;
  if (!(std::abs(p.phi) < 1.0) || p.sigma_eta_sq < 0.0 || !std::isfinite(p.mu))
    throw ContractError("gen_sv: need |phi| < 1 and sigma_eta_sq >= 0");
  if (spec.n_days < 2) throw ContractError("gen_sv: need at least 2 days");

  SvTruth truth;
  truth.h.resize(spec.n_days);
  ReturnSeries series;
  series.label = spec.label;
  series.dates = trading_dates(spec.start, spec.n_days);
  series.values.resize(spec.n_days);

  const double stationary_sd = std::sqrt(p.sigma_eta_sq / (1.0 - p.phi * p.phi));
  const double eta_sd = std::sqrt(p.sigma_eta_sq);
  for (size_t t = 0; t < spec.n_days; ++t) {
    truth.h[t] = t == 0 ? p.mu + stationary_sd * rng.gaussian()
                        : p.mu + p.phi * (truth.h[t - 1] - p.mu) + eta_sd * rng.gaussian();
    series.values[t] = std::exp(0.5 * truth.h[t]) * rng.gaussian();
  }
  series.validate();
  return {std::move(series), std::move(truth)};
}

ReturnSeries gen_garch(const GarchGenSpec& spec, Rng& rng) {
  spec.params.validate();
  if (spec.n_days < 2) throw ContractError("gen_garch: need at least 2 days");
  const auto& p = spec.params;

  ReturnSeries series;
  series.label = spec.label;
  series.dates = trading_dates(spec.start, spec.n_days);
  series.values.resize(spec.n_days);

  double sigma2 = p.omega / (1.0 - p.alpha - p.beta);
  for (size_t t = 0; t < spec.n_days; ++t) {
    if (t > 0)
      sigma2 = p.omega + p.alpha * series.values[t - 1] * series.values[t - 1] +
               p.beta * sigma2;
    series.values[t] = std::sqrt(sigma2) * rng.gaussian();
  }
  series.validate();
  return series;
}

void IntradaySpec::validate() const {
  if (tick_interval_sec < 1) throw ContractError("intraday spec: tick interval < 1s");
  if (!(overnight_share >= 0.0 && overnight_share < 1.0))
    throw ContractError("intraday spec: overnight share must lie in [0, 1)");
  if (noise_std < 0.0) throw ContractError("intraday spec: negative noise std");
}

namespace {

IntradayDayResult simulate_day(const IntradaySpec& spec, const SessionCalendar& cal,
                               Date date, double day_variance, IntradayGenState& state,
                               Rng& rng) {
  if (!(day_variance > 0.0)) throw ContractError("gen_intraday: day variance <= 0");

  const double total_session_sec = cal.total_seconds();
  const double rate = (1.0 - spec.overnight_share) * day_variance / total_session_sec;
  const double step_sd = std::sqrt(rate);  // per 1-second Euler step

  IntradayDayResult result;
  result.day.date = date;

  // Overnight gap on the true path.
  double x = state.true_log_close +
             std::sqrt(spec.overnight_share * day_variance) * rng.gaussian();

  auto emit = [&](int sec) {
    const double noise = spec.noise_std > 0.0 ? spec.noise_std * rng.gaussian() : 0.0;
    result.day.ticks.push_back(Tick{sec, std::exp(x + noise)});
    return x + noise;
  };

  double obs_close = state.obs_log_close;
  for (const auto& session : cal.sessions) {
    int next_tick = session.open_sec;
    obs_close = emit(next_tick);
    next_tick += spec.tick_interval_sec;
    for (int sec = session.open_sec + 1; sec <= session.close_sec; ++sec) {
      x += step_sd * rng.gaussian();
      if (sec == next_tick || sec == session.close_sec) {
        obs_close = emit(sec);
        if (sec == next_tick) next_tick += spec.tick_interval_sec;
      }
    }
  }

  result.implied_return = obs_close - state.obs_log_close;
  state.true_log_close = x;
  state.obs_log_close = obs_close;
  return result;
}

}  // namespace

IntradayDayResult gen_intraday_day(const IntradaySpec& spec, Date date,
                                   double day_variance, IntradayGenState& state,
                                   Rng& rng) {
  spec.validate();
  const SessionCalendar cal =
      spec.calendar.sessions.empty() ? default_calendar() : spec.calendar;
  cal.validate();
  return simulate_day(spec, cal, date, day_variance, state, rng);
}

IntradayResult gen_intraday(const IntradaySpec& spec, const std::vector<Date>& dates,
                            std::span<const double> day_variances, Rng& rng) {
  spec.validate();
  if (dates.size() != day_variances.size())
    throw ContractError("gen_intraday: dates and variances length mismatch");
  if (dates.empty()) throw ContractError("gen_intraday: no days");
  const SessionCalendar cal =
      spec.calendar.sessions.empty() ? default_calendar() : spec.calendar;
  cal.validate();

  IntradayResult out;
  out.panel.calendar = cal;
  out.panel.days.reserve(dates.size());
  out.implied_daily.label = "synth-intraday";
  out.implied_daily.dates = dates;
  out.implied_daily.values.resize(dates.size());

  IntradayGenState state;
  for (size_t k = 0; k < dates.size(); ++k) {
    Rng day_rng = rng.substream(static_cast<uint64_t>(k));
    auto day = simulate_day(spec, cal, dates[k], day_variances[k], state, day_rng);
    out.implied_daily.values[k] = day.implied_return;
    out.panel.days.push_back(std::move(day.day));
  }
  out.implied_daily.validate();
  return out;
}

}  // namespace volkit
