#include "realized.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace volkit {

namespace {

// Previous-tick prices on the session's delta grid.
std::vector<double> grid_prices(const std::vector<Tick>& ticks, const Session& session,
                                long step_sec) {
  std::vector<double> prices;
  size_t next_tick = 0;
  double last_price = 0.0;
  bool have_price = false;
  for (long t = session.open_sec; t <= session.close_sec; t += step_sec) {
    while (next_tick < ticks.size() && ticks[next_tick].sec_of_day <= t) {
      if (ticks[next_tick].sec_of_day >= session.open_sec) {
        last_price = ticks[next_tick].price;
        have_price = true;
      }
      ++next_tick;
    }
    if (have_price) prices.push_back(last_price);
  }
  return prices;
}

}  // namespace

std::vector<DayReturns> intraday_returns(const IntradayPanel& panel, double delta_min,
                                         std::vector<std::string>* warnings) {
  if (!(delta_min > 0.0)) throw ContractError("intraday returns: delta must be > 0");
  panel.calendar.validate();
  const long step_sec = std::lround(delta_min * 60.0);
  if (step_sec < 1) throw ContractError("intraday returns: delta below 1 second");

  std::vector<DayReturns> out;
  for (const auto& day : panel.days) {
    DayReturns dr{day.date, {}};
    for (const auto& session : panel.calendar.sessions) {
      // Ticks are sorted within the day; restrict to this session.
      std::vector<Tick> in_session;
      for (const auto& t : day.ticks)
        if (t.sec_of_day >= session.open_sec && t.sec_of_day <= session.close_sec)
          in_session.push_back(t);
      const auto prices = grid_prices(in_session, session, step_sec);
      for (size_t i = 1; i < prices.size(); ++i)
        dr.returns.push_back(std::log(prices[i] / prices[i - 1]));
    }
    if (dr.returns.empty()) {
      if (warnings)
        warnings->push_back("day " + day.date.str() +
                            ": fewer than 2 grid points in every session, excluded");
      continue;
    }
    out.push_back(std::move(dr));
  }
  return out;
}

RvSeries realized_volatility(const IntradayPanel& panel, double delta_min) {
  RvSeries series;
  series.delta_min = delta_min;
  const auto days = intraday_returns(panel, delta_min, &series.warnings);
  series.dates.reserve(days.size());
  series.rv.reserve(days.size());
  for (const auto& day : days) {
    double rv = 0.0;
    for (double r : day.returns) rv += r * r;
    series.dates.push_back(day.date);
    series.rv.push_back(rv);
  }
  return series;
}

double hl_factor(const ReturnSeries& daily, RvSeries& rv) {
  daily.validate();
  // Align by shared dates; both inputs are date-sorted.
  std::vector<double> returns, variances;
  size_t j = 0;
  for (size_t i = 0; i < rv.dates.size(); ++i) {
    while (j < daily.dates.size() && daily.dates[j] < rv.dates[i]) ++j;
    if (j < daily.dates.size() && daily.dates[j] == rv.dates[i]) {
      returns.push_back(daily.values[j]);
      variances.push_back(rv.rv[i]);
    }
  }
  if (returns.size() < 2)
    throw DataError("hl factor: fewer than 2 shared days between daily and RV series");

  double mean = 0.0;
  for (double r : returns) mean += r;
  mean /= static_cast<double>(returns.size());

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < returns.size(); ++i) {
    num += (returns[i] - mean) * (returns[i] - mean);
    den += variances[i];
  }
  if (!(den > 0.0)) throw DataError("hl factor: total realized variance is zero");

  rv.hl_factor = num / den;
  rv.adjusted.resize(rv.rv.size());
  for (size_t i = 0; i < rv.rv.size(); ++i) rv.adjusted[i] = rv.hl_factor * rv.rv[i];
  return rv.hl_factor;
}

std::vector<SweepRow> signature_sweep(const IntradayPanel& panel,
                                      const ReturnSeries& daily,
                                      const std::vector<double>& deltas_min) {
  if (deltas_min.empty()) throw ContractError("signature sweep: empty delta list");
  std::vector<SweepRow> rows;
  rows.reserve(deltas_min.size());
  for (double delta : deltas_min) {
    RvSeries rv = realized_volatility(panel, delta);
    if (rv.rv.empty()) throw DataError("signature sweep: no usable days at delta");
    const double c = hl_factor(daily, rv);
    double mean_rv = 0.0;
    for (double v : rv.rv) mean_rv += v;
    mean_rv /= static_cast<double>(rv.rv.size());
    rows.push_back(SweepRow{delta, mean_rv, c});
  }
  return rows;
}

}  // namespace volkit
