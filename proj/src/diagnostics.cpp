#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace volkit {

namespace {

double trace_mean(std::span<const double> trace) {
  double m = 0.0;
  for (double x : trace) m += x;
  return m / static_cast<double>(trace.size());
}

// Central second moment with the 1/n normalization used by the ACF.
double trace_c0(std::span<const double> trace, double mean) {
  double c0 = 0.0;
  for (double x : trace) c0 += (x - mean) * (x - mean);
  return c0 / static_cast<double>(trace.size());
}

double acf_at(std::span<const double> trace, double mean, double c0, size_t lag) {
  const size_t n = trace.size();
  double c = 0.0;
  for (size_t i = 0; i + lag < n; ++i)
    c += (trace[i] - mean) * (trace[i + lag] - mean);
  return c / (static_cast<double>(n) * c0);
}

}  // namespace

std::vector<double> acf(std::span<const double> trace, size_t max_lag) {
  if (max_lag < 1 || trace.size() <= max_lag)
    throw ContractError("acf: need n > max_lag >= 1");
  const double mean = trace_mean(trace);
  const double c0 = trace_c0(trace, mean);
  if (!(c0 > 0.0)) throw DataError("acf: zero-variance trace");

  std::vector<double> out(max_lag + 1);
  out[0] = 1.0;
  for (size_t lag = 1; lag <= max_lag; ++lag)
    out[lag] = acf_at(trace, mean, c0, lag);
  return out;
}

TauInt tau_int(std::span<const double> trace, size_t max_lag, double c) {
  const size_t n = trace.size();
  if (n < 4) throw ContractError("tau_int: trace too short");
  if (max_lag == 0) max_lag = n / 3;
  max_lag = std::min(max_lag, n - 1);

  const double mean = trace_mean(trace);
  const double c0 = trace_c0(trace, mean);
  if (!(c0 > 0.0)) throw DataError("tau_int: zero-variance trace");

  TauInt result;
  double tau = 1.0;
  for (size_t w = 1; w <= max_lag; ++w) {
    tau += 2.0 * acf_at(trace, mean, c0, w);
    if (static_cast<double>(w) >= c * tau) {
      result.tau = tau;
      result.window = w;
      result.converged = true;
      break;
    }
  }
  if (!result.converged) {
    result.tau = tau;
    result.window = max_lag;
  }
  result.err = result.tau *
               std::sqrt(2.0 * (2.0 * static_cast<double>(result.window) + 1.0) /
                         static_cast<double>(n));
  return result;
}

double jackknife_se(std::span<const double> trace, size_t block_size) {
  const size_t n = trace.size();
  if (block_size < 1) throw ContractError("jackknife: block_size must be >= 1");
  const size_t n_blocks = n / block_size;
  if (n_blocks < 2) throw ContractError("jackknife: need at least 2 blocks");

  const size_t used = n_blocks * block_size;
  double total = 0.0;
  for (size_t i = 0; i < used; ++i) total += trace[i];

  // Leave-one-block-out means.
  std::vector<double> reps(n_blocks);
  const double denom = static_cast<double>(used - block_size);
  for (size_t b = 0; b < n_blocks; ++b) {
    double block_sum = 0.0;
    for (size_t i = b * block_size; i < (b + 1) * block_size; ++i)
      block_sum += trace[i];
    reps[b] = (total - block_sum) / denom;
  }
  const double rep_mean = trace_mean(reps);
  double ss = 0.0;
  for (double r : reps) ss += (r - rep_mean) * (r - rep_mean);
  const double nb = static_cast<double>(n_blocks);
  return std::sqrt((nb - 1.0) / nb * ss);
}

TraceSummary summarize(std::span<const double> trace) {
  if (trace.size() < 100) throw ContractError("summarize: need at least 100 draws");
  TraceSummary s;
  s.n = trace.size();
  s.mean = trace_mean(trace);

  double ss = 0.0;
  for (double x : trace) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(trace.size() - 1));

  if (!(ss > 0.0)) {
    // Constant trace: no dispersion, no autocorrelation structure.
    s.se = 0.0;
    s.tau.tau = std::numeric_limits<double>::quiet_NaN();
    s.tau.converged = false;
    return s;
  }

  s.tau = tau_int(trace);
  const size_t block =
      std::max<size_t>(1, static_cast<size_t>(std::ceil(2.0 * s.tau.tau)));
  const size_t max_block = trace.size() / 2;
  s.se = jackknife_se(trace, std::min(block, max_block));
  return s;
}

}  // namespace volkit
