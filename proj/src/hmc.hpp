#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rng.hpp"

namespace volkit {

// Differentiable target density, up to an additive constant in the log.
// grad_potential fills d(-log_prob)/dx.
struct Target {
  std::function<double(std::span<const double>)> log_prob;
  std::function<void(std::span<const double>, std::span<double>)> grad_potential;
};

struct HmcConfig {
  double step_size = 0.1;
  int n_steps = 10;
  double target_accept = 0.65;
  bool tune = true;
  // When tuning, n_steps follows round(trajectory_length / step_size).
  double trajectory_length = 1.0;
  uint64_t rng_seed = 0;

  void validate() const;
};

struct HmcReport {
  double delta_h = 0.0;     // +inf marks a divergent trajectory
  double accept_prob = 0.0;
  bool accepted = false;
  bool divergent = false;
};

// Trajectory integrators share this interface so alternative schemes can be
// swapped in; only the leapfrog is provided.
class TrajectoryIntegrator {
 public:
  virtual ~TrajectoryIntegrator() = default;
  // Advances (x, p) by n_steps steps of size eps. Returns false if the
  // state or gradient stopped being finite.
  virtual bool integrate(const Target& target, std::vector<double>& x,
                         std::vector<double>& p, double eps, int n_steps) const = 0;
};

// Second-order position-first leapfrog: half drift, full momentum kick,
// half drift per step (kicks of adjacent steps are fused).
class Leapfrog final : public TrajectoryIntegrator {
 public:
  bool integrate(const Target& target, std::vector<double>& x,
                 std::vector<double>& p, double eps, int n_steps) const override;
};

// Convenience free function running the standard leapfrog.
bool leapfrog(const Target& target, std::vector<double>& x, std::vector<double>& p,
              double eps, int n_steps);

double hamiltonian(const Target& target, std::span<const double> x,
                   std::span<const double> p);

// min(1, exp(-delta_h)); a +inf delta_h always rejects.
bool metropolis_accept(double delta_h, double& accept_prob, Rng& rng);

// One full HMC update: fresh momenta, trajectory, Metropolis test. On
// rejection (or divergence) x is left unchanged.
HmcReport hmc_step(const Target& target, std::vector<double>& x, const HmcConfig& cfg,
                   Rng& rng, const TrajectoryIntegrator& integrator = Leapfrog{});

// Multiplicative step-size rule: nudges eps so the empirical acceptance of
// the window approaches target_accept; a small deadband keeps it still once
// it is there.
double tune_step_size(std::span<const HmcReport> window, double eps,
                      double target_accept);

// Steps per trajectory for a given step size at fixed trajectory length.
int steps_for_trajectory(double trajectory_length, double eps);

}  // namespace volkit
