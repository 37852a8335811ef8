#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "sv_fit.hpp"
#include "timeseries.hpp"

namespace volkit {

// GARCH(1,1) with normal errors and zero mean:
//   sigma2_t = omega + alpha y_{t-1}^2 + beta sigma2_{t-1},
// initialized at the unconditional variance omega / (1 - alpha - beta).
struct GarchParams {
  double omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  bool valid() const;
  void validate() const;
};

// Prior on (omega, alpha, beta): flat over the stationarity region
// omega > 0, alpha, beta >= 0, alpha + beta < 1.
struct GarchPriors {};

std::vector<double> garch_filter(std::span<const double> y, const GarchParams& p);
double garch_loglik(std::span<const double> y, const GarchParams& p);

struct GarchChain {
  std::vector<double> omega;
  std::vector<double> alpha;
  std::vector<double> beta;

  std::vector<RunningMoments> vol;  // posterior of sigma2_t per day

  size_t n_burn = 0;
  size_t n_kept = 0;
  uint64_t seed = 0;
  double accept_rate = 0.0;
  double final_scale = 0.0;
  std::vector<std::string> warnings;
};

// Random-walk Metropolis on (ln omega, logit(alpha+beta), logit(alpha/(alpha+beta)))
// so every draw satisfies the constraints by construction. The proposal
// scale adapts during burn-in and is frozen afterwards.
GarchChain run_garch_fit(const ReturnSeries& y, const GarchPriors& priors,
                         size_t n_burn, size_t n_keep, Rng rng);

}  // namespace volkit
