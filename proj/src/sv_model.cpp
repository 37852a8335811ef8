#include "sv_model.hpp"

#include <cmath>

#include "errors.hpp"

namespace volkit {

bool SvParams::valid() const {
  return std::isfinite(mu) && std::abs(phi) < 1.0 && sigma_eta_sq > 0.0 &&
         std::isfinite(sigma_eta_sq);
}

void SvParams::validate() const {
  if (!valid()) throw ContractError("invalid SV parameters: need |phi| < 1, sigma_eta_sq > 0");
}

namespace {

void check_lengths(std::span<const double> h, std::span<const double> y,
                   const SvParams& p) {
  p.validate();
  if (h.size() != y.size() || h.empty())
    throw ContractError("sv model: latent path and return series lengths differ");
}

}  // namespace

double sv_log_prob(std::span<const double> h, std::span<const double> y,
                   const SvParams& p) {
  check_lengths(h, y, p);
  const size_t n = h.size();
  const double inv2sig = 1.0 / (2.0 * p.sigma_eta_sq);

  double logp = 0.0;
  for (size_t i = 0; i < n; ++i)
    logp -= 0.5 * h[i] + 0.5 * y[i] * y[i] * std::exp(-h[i]);

  const double d1 = h[0] - p.mu;
  logp -= d1 * d1 * (1.0 - p.phi * p.phi) * inv2sig;
  for (size_t i = 1; i < n; ++i) {
    const double e = h[i] - p.mu - p.phi * (h[i - 1] - p.mu);
    logp -= e * e * inv2sig;
  }
  return logp;
}

double sv_potential(std::span<const double> h, std::span<const double> y,
                    const SvParams& p) {
  return -sv_log_prob(h, y, p);
}

void sv_potential_grad(std::span<const double> h, std::span<const double> y,
                       const SvParams& p, std::span<double> grad) {
  check_lengths(h, y, p);
  if (grad.size() != h.size()) throw ContractError("sv model: gradient buffer size");
  const size_t n = h.size();
  const double inv_sig = 1.0 / p.sigma_eta_sq;

  for (size_t i = 0; i < n; ++i)
    grad[i] = 0.5 - 0.5 * y[i] * y[i] * std::exp(-h[i]);

  grad[0] += (h[0] - p.mu) * (1.0 - p.phi * p.phi) * inv_sig;
  for (size_t i = 1; i < n; ++i) {
    const double e = (h[i] - p.mu - p.phi * (h[i - 1] - p.mu)) * inv_sig;
    grad[i] += e;
    grad[i - 1] -= p.phi * e;
  }
}

double sv_hamiltonian(std::span<const double> h, std::span<const double> mom,
                      std::span<const double> y, const SvParams& p) {
  if (mom.size() != h.size()) throw ContractError("sv model: momenta length");
  double kinetic = 0.0;
  for (double pi : mom) kinetic += 0.5 * pi * pi;
  return kinetic + sv_potential(h, y, p);
}

}  // namespace volkit
