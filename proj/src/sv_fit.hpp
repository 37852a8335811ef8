#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmc.hpp"
#include "rng.hpp"
#include "sv_model.hpp"
#include "timeseries.hpp"

namespace volkit {

// Priors for the SV parameter block: mu flat, phi uniform on (-1,1),
// sigma_eta_sq inverse-gamma(shape, scale).
struct SvPriors {
  double sigma_shape = 2.5;
  double sigma_scale = 0.025;
  void validate() const;
};

struct GaussianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Full conditional of mu under the flat prior: Gaussian with closed-form
// moments from the two AR(1) quadratic forms.
GaussianMoments sv_mu_conditional(std::span<const double> h, double phi,
                                  double sigma_eta_sq);
double sample_mu(std::span<const double> h, double phi, double sigma_eta_sq, Rng& rng);

// Inverse-gamma full conditional of sigma_eta_sq: shape/scale returned
// explicitly so the update is inspectable.
struct InverseGammaSpec {
  double shape = 0.0;
  double scale = 0.0;
};
InverseGammaSpec sv_sigma_conditional(std::span<const double> h, double mu, double phi,
                                      const SvPriors& priors);
double sample_sigma_eta_sq(std::span<const double> h, double mu, double phi,
                           const SvPriors& priors, Rng& rng);

// Conditional log density of phi (uniform prior on (-1,1); up to a constant):
// 0.5 ln(1-phi^2) - (h_1-mu)^2 (1-phi^2) / (2 s2) - sum e_i(phi)^2 / (2 s2).
double sv_phi_log_density(double phi, std::span<const double> h, double mu,
                          double sigma_eta_sq);

// Gaussian proposal at the AR(1) least-squares value with its conditional sd.
GaussianMoments sv_phi_proposal(std::span<const double> h, double mu,
                                double sigma_eta_sq);

// Log Metropolis-Hastings ratio for a candidate drawn from sv_phi_proposal:
// [log t(cand) - log q(cand)] - [log t(cur) - log q(cur)].
double sv_phi_log_accept_ratio(double candidate, double current,
                               std::span<const double> h, double mu,
                               double sigma_eta_sq);

struct PhiDraw {
  double value = 0.0;
  bool accepted = false;
};
// Metropolis-Hastings update; proposals outside (-1,1) are rejected outright.
PhiDraw sample_phi(std::span<const double> h, double mu, double sigma_eta_sq,
                   double current_phi, Rng& rng);

// Streaming mean/variance (Welford).
struct RunningMoments {
  double mean = 0.0;
  double m2 = 0.0;
  size_t n = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double sd() const { return std::sqrt(variance()); }
};

// Post-burn-in record of an SV fit. Full latent paths are not stored;
// per-day moments of h_t and exp(h_t) are accumulated instead, plus full
// traces for a small set of representative day indices.
struct SvChain {
  std::vector<double> mu;
  std::vector<double> phi;
  std::vector<double> sigma_eta_sq;

  std::vector<RunningMoments> exp_h;      // posterior of exp(h_t) per day
  std::vector<RunningMoments> h_moments;  // posterior of h_t per day

  std::vector<size_t> h_trace_indices;    // 0-based day indices
  std::vector<std::vector<double>> h_traces;

  size_t n_burn = 0;
  size_t n_kept = 0;
  uint64_t seed = 0;

  double hmc_accept_rate = 0.0;
  double phi_accept_rate = 0.0;
  double final_step_size = 0.0;
  int final_n_steps = 0;
  size_t divergences = 0;
  std::vector<std::string> warnings;
};

// Gibbs loop of the full fit: one HMC update of the latent path, then the
// mu / phi / sigma_eta_sq sweep, per iteration. Step size is tuned during
// burn-in only.
SvChain run_sv_fit(const ReturnSeries& y, const SvPriors& priors, HmcConfig hmc_cfg,
                   size_t n_burn, size_t n_keep, Rng rng,
                   std::vector<size_t> h_trace_indices = {9});

}  // namespace volkit
