#include "evaluate.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "errors.hpp"

namespace volkit {

double rmspe(const VolPath& model, const RvSeries& rv) {
  if (model.dates.size() != model.var.size())
    throw ContractError("rmspe: model dates/values length mismatch");
  if (rv.adjusted.size() != rv.rv.size())
    throw ContractError("rmspe: realized series has no HL adjustment attached");

  double sum = 0.0;
  size_t n = 0;
  size_t j = 0;
  for (size_t i = 0; i < rv.dates.size(); ++i) {
    while (j < model.dates.size() && model.dates[j] < rv.dates[i]) ++j;
    if (j == model.dates.size()) break;
    if (model.dates[j] != rv.dates[i]) continue;
    const double crv = rv.adjusted[i];
    if (!(crv > 0.0))
      throw DataError("rmspe: adjusted realized variance is zero on " +
                      rv.dates[i].str());
    const double rel = (model.var[j] - crv) / crv;
    sum += rel * rel;
    ++n;
  }
  if (n == 0) throw DataError("rmspe: no shared dates between model and RV series");
  return std::sqrt(sum / static_cast<double>(n));
}

ScoreTable compare(const std::vector<VolPath>& models,
                   const std::vector<RvSeries>& rv_per_delta) {
  if (models.empty()) throw ContractError("compare: no model paths");
  if (rv_per_delta.empty()) throw ContractError("compare: no realized series");

  ScoreTable table;
  for (const auto& rv : rv_per_delta) {
    double best = std::numeric_limits<double>::infinity();
    std::string best_model;
    for (const auto& model : models) {
      ScoreRow row;
      row.model = model.model;
      row.delta_min = rv.delta_min;
      row.rmspe = rmspe(model, rv);

      size_t n = 0, j = 0;
      for (size_t i = 0; i < rv.dates.size(); ++i) {
        while (j < model.dates.size() && model.dates[j] < rv.dates[i]) ++j;
        if (j == model.dates.size()) break;
        if (model.dates[j] == rv.dates[i]) ++n;
      }
      row.n_days = n;
      if (row.rmspe < best) {
        best = row.rmspe;
        best_model = row.model;
      }
      table.rows.push_back(std::move(row));
    }
    table.winners.emplace_back(rv.delta_min, best_model);
  }
  return table;
}

}  // namespace volkit
