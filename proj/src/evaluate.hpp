#pragma once

#include <string>
#include <vector>

#include "realized.hpp"
#include "timeseries.hpp"

namespace volkit {

// A model's per-day variance path (posterior mean of the daily variance).
struct VolPath {
  std::vector<Date> dates;
  std::vector<double> var;
  std::string model;
};

// Root mean squared percentage error of the model path against the
// HL-adjusted realized variance, over the shared dates:
//   sqrt( 1/N sum_t ((var_t - cRV_t) / cRV_t)^2 ).
double rmspe(const VolPath& model, const RvSeries& rv);

struct ScoreRow {
  std::string model;
  double delta_min = 0.0;
  double rmspe = 0.0;
  size_t n_days = 0;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
  // Winner (lowest RMSPE) per sampling interval.
  std::vector<std::pair<double, std::string>> winners;
};

// RMSPE of each model at each sampling interval; every RvSeries must carry
// its HL adjustment already.
ScoreTable compare(const std::vector<VolPath>& models,
                   const std::vector<RvSeries>& rv_per_delta);

}  // namespace volkit
