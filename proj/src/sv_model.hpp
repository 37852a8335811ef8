#pragma once

#include <span>
#include <vector>

namespace volkit {

// Parameters of the standard stochastic volatility model
//   y_t = exp(h_t / 2) eps_t,   h_t = mu + phi (h_{t-1} - mu) + eta_t,
// with eps_t ~ N(0,1) and eta_t ~ N(0, sigma_eta_sq).
struct SvParams {
  double mu = 0.0;
  double phi = 0.0;
  double sigma_eta_sq = 1.0;

  bool valid() const;
  void validate() const;
};

// Log of the unnormalized joint density of the latent log-variances h given
// returns y and parameters:
//   -sum_i [ h_i/2 + (y_i^2/2) e^{-h_i} ]
//   - (h_1 - mu)^2 (1 - phi^2) / (2 sigma_eta_sq)
//   - sum_{i>=2} [ h_i - mu - phi (h_{i-1} - mu) ]^2 / (2 sigma_eta_sq)
double sv_log_prob(std::span<const double> h, std::span<const double> y,
                   const SvParams& p);

// Potential energy U(h) = -sv_log_prob(h).
double sv_potential(std::span<const double> h, std::span<const double> y,
                    const SvParams& p);

// dU/dh_i in closed form (the AR(1) quadratic forms couple neighbours).
void sv_potential_grad(std::span<const double> h, std::span<const double> y,
                       const SvParams& p, std::span<double> grad);

// H(p, h) = sum_i p_i^2 / 2 + U(h).
double sv_hamiltonian(std::span<const double> h, std::span<const double> mom,
                      std::span<const double> y, const SvParams& p);

}  // namespace volkit
