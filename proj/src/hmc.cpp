#include "hmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace volkit {

void HmcConfig::validate() const {
  if (!(step_size > 0.0)) throw ContractError("hmc: step_size must be > 0");
  if (n_steps < 1) throw ContractError("hmc: n_steps must be >= 1");
  if (!(target_accept > 0.0 && target_accept < 1.0))
    throw ContractError("hmc: target_accept must lie in (0,1)");
  if (!(trajectory_length > 0.0)) throw ContractError("hmc: trajectory_length must be > 0");
}

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

bool Leapfrog::integrate(const Target& target, std::vector<double>& x,
                         std::vector<double>& p, double eps, int n_steps) const {
  const size_t n = x.size();
  std::vector<double> grad(n);

  // Half drift, then alternating full kicks and drifts; adjacent half
  // drifts are fused into one full drift.
  for (size_t i = 0; i < n; ++i) x[i] += 0.5 * eps * p[i];
  for (int step = 0; step < n_steps; ++step) {
    target.grad_potential(x, grad);
    if (!all_finite(grad)) return false;
    for (size_t i = 0; i < n; ++i) p[i] -= eps * grad[i];
    const double drift = (step + 1 == n_steps) ? 0.5 * eps : eps;
    for (size_t i = 0; i < n; ++i) x[i] += drift * p[i];
    if (!all_finite(x) || !all_finite(p)) return false;
  }
  return true;
}

bool leapfrog(const Target& target, std::vector<double>& x, std::vector<double>& p,
              double eps, int n_steps) {
  return Leapfrog{}.integrate(target, x, p, eps, n_steps);
}

double hamiltonian(const Target& target, std::span<const double> x,
                   std::span<const double> p) {
  double kinetic = 0.0;
  for (double pi : p) kinetic += 0.5 * pi * pi;
  return kinetic - target.log_prob(x);
}

bool metropolis_accept(double delta_h, double& accept_prob, Rng& rng) {
  accept_prob = delta_h <= 0.0 ? 1.0 : std::exp(-delta_h);
  if (std::isnan(delta_h)) accept_prob = 0.0;
  const double u = rng.uniform();
  return u < accept_prob;
}

HmcReport hmc_step(const Target& target, std::vector<double>& x, const HmcConfig& cfg,
                   Rng& rng, const TrajectoryIntegrator& integrator) {
  cfg.validate();
  const size_t n = x.size();

  std::vector<double> p(n);
  for (auto& pi : p) pi = rng.gaussian();

  const double h0 = hamiltonian(target, x, p);

  std::vector<double> x_new = x;
  std::vector<double> p_new = p;
  const bool finite = integrator.integrate(target, x_new, p_new, cfg.step_size, cfg.n_steps);

  HmcReport report;
  if (!finite) {
    report.delta_h = std::numeric_limits<double>::infinity();
    report.divergent = true;
  } else {
    const double h1 = hamiltonian(target, x_new, p_new);
    report.delta_h = h1 - h0;
    if (std::isnan(report.delta_h)) {
      report.delta_h = std::numeric_limits<double>::infinity();
      report.divergent = true;
    }
  }

  report.accepted = metropolis_accept(report.delta_h, report.accept_prob, rng);
  if (report.accepted) x = std::move(x_new);
  return report;
}

double tune_step_size(std::span<const HmcReport> window, double eps,
                      double target_accept) {
  if (window.empty()) return eps;
  double rate = 0.0;
  for (const auto& r : window) rate += r.accepted ? 1.0 : 0.0;
  rate /= static_cast<double>(window.size());

  constexpr double kDeadband = 0.02;
  if (std::abs(rate - target_accept) <= kDeadband) return eps;
  const double next = eps * std::exp(rate - target_accept);
  return std::clamp(next, 1e-8, 1e3);
}

int steps_for_trajectory(double trajectory_length, double eps) {
  const long steps = std::lround(trajectory_length / eps);
  return static_cast<int>(std::clamp(steps, 1L, 100000L));
}

}  // namespace volkit
