#include "garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace volkit {

bool GarchParams::valid() const {
  return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0 &&
         std::isfinite(omega);
}

void GarchParams::validate() const {
  if (!valid())
    throw ContractError(
        "invalid GARCH parameters: need omega > 0, alpha, beta >= 0, alpha + beta < 1");
}

std::vector<double> garch_filter(std::span<const double> y, const GarchParams& p) {
  p.validate();
  if (y.empty()) throw ContractError("garch filter: empty series");
  std::vector<double> sigma2(y.size());
  sigma2[0] = p.omega / (1.0 - p.alpha - p.beta);
  for (size_t t = 1; t < y.size(); ++t)
    sigma2[t] = p.omega + p.alpha * y[t - 1] * y[t - 1] + p.beta * sigma2[t - 1];
  return sigma2;
}

double garch_loglik(std::span<const double> y, const GarchParams& p) {
  const auto sigma2 = garch_filter(y, p);
  constexpr double kLog2Pi = 1.8378770664093454836;
  double ll = 0.0;
  for (size_t t = 0; t < y.size(); ++t)
    ll += -0.5 * (kLog2Pi + std::log(sigma2[t])) - y[t] * y[t] / (2.0 * sigma2[t]);
  return ll;
}

namespace {

struct TransformedGarch {
  // x = (ln omega, logit(alpha+beta), logit(alpha/(alpha+beta)))
  double x[3];

  static TransformedGarch from_params(const GarchParams& p) {
    const double s = p.alpha + p.beta;
    const double r = p.alpha / s;
    auto logit = [](double v) { return std::log(v / (1.0 - v)); };
    return TransformedGarch{{std::log(p.omega), logit(s), logit(r)}};
  }

  GarchParams to_params() const {
    auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    const double s = sigmoid(x[1]);
    const double r = sigmoid(x[2]);
    return GarchParams{std::exp(x[0]), s * r, s * (1.0 - r)};
  }

  // ln |d(omega, alpha, beta) / dx|, the change-of-variables correction for
  // the flat prior on the natural scale.
  double log_jacobian() const {
    auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    const double s = sigmoid(x[1]);
    const double r = sigmoid(x[2]);
    return x[0] + std::log(s) + std::log(s * (1.0 - s)) + std::log(r * (1.0 - r));
  }
};

double log_posterior(std::span<const double> y, const TransformedGarch& t) {
  const GarchParams p = t.to_params();
  if (!p.valid()) return -std::numeric_limits<double>::infinity();
  return garch_loglik(y, p) + t.log_jacobian();
}

}  // namespace

GarchChain run_garch_fit(const ReturnSeries& y, const GarchPriors&, size_t n_burn,
                         size_t n_keep, Rng rng) {
  y.validate();
  if (n_burn < 1 || n_keep < 1)
    throw ContractError("garch fit: n_burn and n_keep must be >= 1");
  const size_t n = y.size();

  GarchChain chain;
  chain.n_burn = n_burn;
  chain.seed = rng.seed();
  chain.vol.resize(n);
  chain.omega.reserve(n_keep);
  chain.alpha.reserve(n_keep);
  chain.beta.reserve(n_keep);

  double var_y = 0.0;
  for (double v : y.values) var_y += v * v;
  var_y = std::max(var_y / static_cast<double>(n), 1e-12);

  GarchParams init{var_y * (1.0 - 0.05 - 0.90), 0.05, 0.90};
  TransformedGarch state = TransformedGarch::from_params(init);
  double state_logp = log_posterior(y.values, state);

  double scale = 0.1;
  constexpr double kTargetAccept = 0.3;
  constexpr size_t kTuneWindow = 100;
  size_t window_accepts = 0, window_count = 0;
  size_t kept_accepts = 0;
  size_t burn_tail_accepts = 0;
  const size_t burn_tail = std::min<size_t>(n_burn, 1000);

  const size_t total = n_burn + n_keep;
  for (size_t it = 0; it < total; ++it) {
    const bool burning = it < n_burn;

    TransformedGarch cand = state;
    for (double& xi : cand.x) xi += scale * rng.gaussian();
    const double cand_logp = log_posterior(y.values, cand);

    const double u = rng.uniform();
    const bool accepted = std::log(u) < cand_logp - state_logp;
    if (accepted) {
      state = cand;
      state_logp = cand_logp;
    }

    if (burning) {
      ++window_count;
      if (accepted) ++window_accepts;
      if (window_count == kTuneWindow) {
        const double rate =
            static_cast<double>(window_accepts) / static_cast<double>(window_count);
        if (std::abs(rate - kTargetAccept) > 0.02)
          scale = std::clamp(scale * std::exp(rate - kTargetAccept), 1e-6, 10.0);
        window_accepts = window_count = 0;
      }
      if (it + burn_tail >= n_burn && accepted) ++burn_tail_accepts;
      continue;
    }

    if (accepted) ++kept_accepts;
    const GarchParams p = state.to_params();
    chain.omega.push_back(p.omega);
    chain.alpha.push_back(p.alpha);
    chain.beta.push_back(p.beta);
    const auto sigma2 = garch_filter(y.values, p);
    for (size_t t = 0; t < n; ++t) chain.vol[t].add(sigma2[t]);
  }

  chain.n_kept = n_keep;
  chain.accept_rate = static_cast<double>(kept_accepts) / static_cast<double>(n_keep);
  chain.final_scale = scale;

  const double burn_rate =
      static_cast<double>(burn_tail_accepts) / static_cast<double>(burn_tail);
  if (burn_rate < 0.1 || burn_rate > 0.6)
    chain.warnings.push_back("garch acceptance " + std::to_string(burn_rate) +
                             " outside [0.1, 0.6] at end of burn-in");
  return chain;
}

}  // namespace volkit
