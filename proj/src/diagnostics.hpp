#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace volkit {

// Sample autocorrelation function with the biased 1/n normalization;
// acf[0] == 1. Throws on a zero-variance trace.
std::vector<double> acf(std::span<const double> trace, size_t max_lag);

struct TauInt {
  double tau = 1.0;
  double err = 0.0;
  size_t window = 0;
  // False when the self-consistent window failed to close before max_lag;
  // tau is then a flagged lower-quality estimate.
  bool converged = false;
};

// Integrated autocorrelation time 1 + 2 sum_{t<=W} ACF(t) with the
// self-consistent window rule W >= c * tau(W); err = tau * sqrt(2(2W+1)/n).
// max_lag = 0 picks n/3.
TauInt tau_int(std::span<const double> trace, size_t max_lag = 0, double c = 6.0);

// Delete-one-block jackknife standard error of the mean over floor(n/b)
// complete blocks.
double jackknife_se(std::span<const double> trace, size_t block_size);

struct TraceSummary {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  TauInt tau;
  size_t n = 0;
};

// Posterior-trace report: mean, sd, blocked-jackknife se (block ~ 2 tau)
// and the autocorrelation time. Degenerate (constant) traces come back with
// zero sd/se and a flagged tau.
TraceSummary summarize(std::span<const double> trace);

}  // namespace volkit
