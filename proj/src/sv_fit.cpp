#include "sv_fit.hpp"

#include <algorithm>
#include <limits>

#include "errors.hpp"

namespace volkit {

void SvPriors::validate() const {
  if (!(sigma_shape > 0.0) || !(sigma_scale > 0.0))
    throw ContractError("sv priors: inverse-gamma hyperparameters must be > 0");
}

GaussianMoments sv_mu_conditional(std::span<const double> h, double phi,
                                  double sigma_eta_sq) {
  if (h.empty()) throw ContractError("mu conditional: empty path");
  if (!(std::abs(phi) < 1.0) || !(sigma_eta_sq > 0.0))
    throw ContractError("mu conditional: invalid phi or sigma_eta_sq");
  const size_t n = h.size();
  const double one_m_phi2 = 1.0 - phi * phi;
  const double one_m_phi = 1.0 - phi;

  // Completing the square in mu across the stationary term and the n-1
  // transition terms.
  double weight = one_m_phi2;
  double weighted_sum = one_m_phi2 * h[0];
  for (size_t i = 1; i < n; ++i) {
    weight += one_m_phi * one_m_phi;
    weighted_sum += one_m_phi * (h[i] - phi * h[i - 1]);
  }
  GaussianMoments g;
  g.mean = weighted_sum / weight;
  g.variance = sigma_eta_sq / weight;
  return g;
}

double sample_mu(std::span<const double> h, double phi, double sigma_eta_sq, Rng& rng) {
  const auto g = sv_mu_conditional(h, phi, sigma_eta_sq);
  return g.mean + std::sqrt(g.variance) * rng.gaussian();
}

InverseGammaSpec sv_sigma_conditional(std::span<const double> h, double mu, double phi,
                                      const SvPriors& priors) {
  priors.validate();
  if (h.empty()) throw ContractError("sigma conditional: empty path");
  const size_t n = h.size();
  double rss = (h[0] - mu) * (h[0] - mu) * (1.0 - phi * phi);
  for (size_t i = 1; i < n; ++i) {
    const double e = h[i] - mu - phi * (h[i - 1] - mu);
    rss += e * e;
  }
  return InverseGammaSpec{priors.sigma_shape + 0.5 * static_cast<double>(n),
                          priors.sigma_scale + 0.5 * rss};
}

double sample_sigma_eta_sq(std::span<const double> h, double mu, double phi,
                           const SvPriors& priors, Rng& rng) {
  const auto ig = sv_sigma_conditional(h, mu, phi, priors);
  return rng.inverse_gamma(ig.shape, ig.scale);
}

double sv_phi_log_density(double phi, std::span<const double> h, double mu,
                          double sigma_eta_sq) {
  if (!(std::abs(phi) < 1.0)) return -std::numeric_limits<double>::infinity();
  const double inv2sig = 1.0 / (2.0 * sigma_eta_sq);
  const double d1 = h[0] - mu;
  double logp = 0.5 * std::log1p(-phi * phi) - d1 * d1 * (1.0 - phi * phi) * inv2sig;
  for (size_t i = 1; i < h.size(); ++i) {
    const double e = h[i] - mu - phi * (h[i - 1] - mu);
    logp -= e * e * inv2sig;
  }
  return logp;
}

GaussianMoments sv_phi_proposal(std::span<const double> h, double mu,
                                double sigma_eta_sq) {
  double num = 0.0, den = 0.0;
  for (size_t i = 1; i < h.size(); ++i) {
    num += (h[i] - mu) * (h[i - 1] - mu);
    den += (h[i - 1] - mu) * (h[i - 1] - mu);
  }
  GaussianMoments g;
  if (den > 0.0) {
    g.mean = num / den;
    g.variance = sigma_eta_sq / den;
  } else {
    // Degenerate path (h == mu): fall back to a wide proposal.
    g.mean = 0.0;
    g.variance = 1.0;
  }
  return g;
}

double sv_phi_log_accept_ratio(double candidate, double current,
                               std::span<const double> h, double mu,
                               double sigma_eta_sq) {
  const auto q = sv_phi_proposal(h, mu, sigma_eta_sq);
  auto log_q = [&](double x) {
    const double d = x - q.mean;
    return -0.5 * d * d / q.variance;
  };
  return (sv_phi_log_density(candidate, h, mu, sigma_eta_sq) - log_q(candidate)) -
         (sv_phi_log_density(current, h, mu, sigma_eta_sq) - log_q(current));
}

PhiDraw sample_phi(std::span<const double> h, double mu, double sigma_eta_sq,
                   double current_phi, Rng& rng) {
  if (h.empty()) throw ContractError("phi update: empty path");
  const auto q = sv_phi_proposal(h, mu, sigma_eta_sq);
  const double sd = std::sqrt(q.variance);
  const double cand = q.mean + sd * rng.gaussian();

  PhiDraw draw{current_phi, false};
  if (!(std::abs(cand) < 1.0)) {
    rng.uniform();  // keep the draw count fixed regardless of support hits
    return draw;
  }

  const double log_ratio = sv_phi_log_accept_ratio(cand, current_phi, h, mu, sigma_eta_sq);
  const double u = rng.uniform();
  if (std::log(u) < log_ratio) {
    draw.value = cand;
    draw.accepted = true;
  }
  return draw;
}

SvChain run_sv_fit(const ReturnSeries& y, const SvPriors& priors, HmcConfig hmc_cfg,
                   size_t n_burn, size_t n_keep, Rng rng,
                   std::vector<size_t> h_trace_indices) {
  y.validate();
  priors.validate();
  hmc_cfg.validate();
  if (n_burn < 1 || n_keep < 1)
    throw ContractError("sv fit: n_burn and n_keep must be >= 1");
  const size_t n = y.size();
  for (size_t idx : h_trace_indices)
    if (idx >= n) throw ContractError("sv fit: h trace index beyond series length");

  SvChain chain;
  chain.n_burn = n_burn;
  chain.seed = rng.seed();
  chain.h_trace_indices = h_trace_indices;
  chain.h_traces.resize(h_trace_indices.size());
  chain.exp_h.resize(n);
  chain.h_moments.resize(n);
  chain.mu.reserve(n_keep);
  chain.phi.reserve(n_keep);
  chain.sigma_eta_sq.reserve(n_keep);
  for (auto& t : chain.h_traces) t.reserve(n_keep);

  // Starting point: flat latent path at the log of the average squared
  // return, moderately persistent dynamics.
  double mean_y2 = 0.0;
  for (double v : y.values) mean_y2 += v * v;
  mean_y2 = std::max(mean_y2 / static_cast<double>(n), 1e-12);

  SvParams params{std::log(mean_y2), 0.9, 0.1};
  std::vector<double> h(n, params.mu);

  const Target target{
      [&params, &y](std::span<const double> state) {
        return sv_log_prob(state, y.values, params);
      },
      [&params, &y](std::span<const double> state, std::span<double> grad) {
        sv_potential_grad(state, y.values, params, grad);
      }};

  if (hmc_cfg.tune)
    hmc_cfg.n_steps = steps_for_trajectory(hmc_cfg.trajectory_length, hmc_cfg.step_size);

  constexpr size_t kTuneWindow = 100;
  std::vector<HmcReport> window;
  window.reserve(kTuneWindow);

  size_t hmc_accepts = 0;
  size_t phi_accepts = 0;
  size_t burn_tail_accepts = 0;
  const size_t burn_tail = std::min<size_t>(n_burn, 1000);

  const size_t total = n_burn + n_keep;
  for (size_t it = 0; it < total; ++it) {
    const bool burning = it < n_burn;

    const HmcReport report = hmc_step(target, h, hmc_cfg, rng);
    if (report.divergent) ++chain.divergences;

    params.mu = sample_mu(h, params.phi, params.sigma_eta_sq, rng);
    const PhiDraw phi_draw =
        sample_phi(h, params.mu, params.sigma_eta_sq, params.phi, rng);
    params.phi = phi_draw.value;
    params.sigma_eta_sq = sample_sigma_eta_sq(h, params.mu, params.phi, priors, rng);

    if (burning) {
      if (hmc_cfg.tune) {
        window.push_back(report);
        if (window.size() == kTuneWindow) {
          hmc_cfg.step_size =
              tune_step_size(window, hmc_cfg.step_size, hmc_cfg.target_accept);
          hmc_cfg.n_steps =
              steps_for_trajectory(hmc_cfg.trajectory_length, hmc_cfg.step_size);
          window.clear();
        }
      }
      if (it + burn_tail >= n_burn && report.accepted) ++burn_tail_accepts;
      continue;
    }

    if (report.accepted) ++hmc_accepts;
    if (phi_draw.accepted) ++phi_accepts;

    chain.mu.push_back(params.mu);
    chain.phi.push_back(params.phi);
    chain.sigma_eta_sq.push_back(params.sigma_eta_sq);
    for (size_t t = 0; t < n; ++t) {
      chain.exp_h[t].add(std::exp(h[t]));
      chain.h_moments[t].add(h[t]);
    }
    for (size_t k = 0; k < h_trace_indices.size(); ++k)
      chain.h_traces[k].push_back(h[h_trace_indices[k]]);
  }

  chain.n_kept = n_keep;
  chain.hmc_accept_rate = static_cast<double>(hmc_accepts) / static_cast<double>(n_keep);
  chain.phi_accept_rate = static_cast<double>(phi_accepts) / static_cast<double>(n_keep);
  chain.final_step_size = hmc_cfg.step_size;
  chain.final_n_steps = hmc_cfg.n_steps;

  const double burn_rate =
      static_cast<double>(burn_tail_accepts) / static_cast<double>(burn_tail);
  if (burn_rate < 0.1 || burn_rate > 0.95)
    chain.warnings.push_back("hmc acceptance " + std::to_string(burn_rate) +
                             " outside [0.1, 0.95] at end of burn-in");
  return chain;
}

}  // namespace volkit
