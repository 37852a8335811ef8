#pragma once

#include <string>
#include <vector>

#include "timeseries.hpp"

namespace volkit {

// Daily realized variance at one sampling interval. `adjusted` is the
// series scaled by the non-trading-hours factor once hl_factor() ran.
struct RvSeries {
  std::vector<Date> dates;
  std::vector<double> rv;
  double delta_min = 0.0;
  double hl_factor = 0.0;           // 0 until attached
  std::vector<double> adjusted;     // hl_factor * rv
  std::vector<std::string> warnings;
};

struct DayReturns {
  Date date;
  std::vector<double> returns;
};

// Log-returns between consecutive grid prices on an open + k*delta grid per
// session, prices aligned by previous tick. No return spans a session
// boundary. Days where no session yields two grid prices are skipped (a
// warning per day).
std::vector<DayReturns> intraday_returns(const IntradayPanel& panel, double delta_min,
                                         std::vector<std::string>* warnings = nullptr);

// RV_t: sum of squared intraday returns per day.
RvSeries realized_volatility(const IntradayPanel& panel, double delta_min);

// Scale factor matching average realized variance to the variance of the
// daily close-to-close returns over the shared dates:
//   c = sum (R_t - Rbar)^2 / sum RV_t.
// Attaches the factor and the adjusted series to rv and returns c.
double hl_factor(const ReturnSeries& daily, RvSeries& rv);

struct SweepRow {
  double delta_min = 0.0;
  double mean_rv = 0.0;
  double hl_factor = 0.0;
};

// Mean unadjusted RV and adjustment factor per sampling interval.
std::vector<SweepRow> signature_sweep(const IntradayPanel& panel,
                                      const ReturnSeries& daily,
                                      const std::vector<double>& deltas_min);

}  // namespace volkit
