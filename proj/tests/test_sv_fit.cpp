#include "sv_fit.hpp"

#include <cmath>
#include <vector>

#include "diagnostics.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace volkit;

namespace {

std::vector<double> random_path(Rng& rng, size_t n, double center) {
  std::vector<double> h(n);
  for (auto& v : h) v = center + rng.gaussian();
  return h;
}

}  // namespace

TEST_CASE("mu conditional decouples when phi is zero") {
  Rng rng(31);
  const auto h = random_path(rng, 12, -1.0);
  const double sig2 = 0.35;
  const auto g = sv_mu_conditional(h, 0.0, sig2);
  double hbar = 0.0;
  for (double v : h) hbar += v;
  hbar /= static_cast<double>(h.size());
  CHECK(g.mean == doctest::Approx(hbar).epsilon(1e-13));
  CHECK(g.variance == doctest::Approx(sig2 / 12.0).epsilon(1e-13));
}

TEST_CASE("mu conditional with one point is the stationary law") {
  const std::vector<double> h = {-2.3};
  const double phi = 0.7, sig2 = 0.5;
  const auto g = sv_mu_conditional(h, phi, sig2);
  CHECK(g.mean == doctest::Approx(-2.3).epsilon(1e-13));
  CHECK(g.variance == doctest::Approx(sig2 / (1.0 - phi * phi)).epsilon(1e-13));
}

TEST_CASE("mu conditional matches a grid quadrature") {
  Rng rng(32);
  const auto h = random_path(rng, 6, -0.8);
  const double phi = 0.55, sig2 = 0.4;
  const auto g = sv_mu_conditional(h, phi, sig2);

  const double sd = std::sqrt(g.variance);
  const auto grid = oracle::grid_moments(
      [&](double mu) {
        // Conditional density of mu: the prior terms of the latent path,
        // written out directly (measurement terms carry no mu).
        double logp = -(h[0] - mu) * (h[0] - mu) * (1.0 - phi * phi) / (2.0 * sig2);
        for (size_t i = 1; i < h.size(); ++i) {
          const double e = h[i] - mu - phi * (h[i - 1] - mu);
          logp -= e * e / (2.0 * sig2);
        }
        return logp;
      },
      g.mean - 10.0 * sd, g.mean + 10.0 * sd, 400001);

  CHECK(g.mean == doctest::Approx(grid.mean).epsilon(1e-6));
  CHECK(g.variance == doctest::Approx(grid.var).epsilon(1e-6));
}

TEST_CASE("mu draws follow the conditional distribution") {
  Rng rng(33);
  const auto h = random_path(rng, 6, -1.2);
  const double phi = 0.3, sig2 = 0.6;
  const auto g = sv_mu_conditional(h, phi, sig2);
  const double sd = std::sqrt(g.variance);

  const auto ref = oracle::grid_cdf(
      [&](double mu) {
        const double d = mu - g.mean;
        return -0.5 * d * d / g.variance;
      },
      g.mean - 9.0 * sd, g.mean + 9.0 * sd, 20001);

  std::vector<double> draws(50000);
  for (auto& v : draws) v = sample_mu(h, phi, sig2, rng);
  CHECK(oracle::ks_distance(draws, ref) < 0.02);
}

TEST_CASE("sigma conditional at zero residuals reduces to the prior plus n/2") {
  const SvPriors priors{2.5, 0.025};
  const std::vector<double> h(9, -1.4);
  const auto ig = sv_sigma_conditional(h, -1.4, 0.6, priors);
  CHECK(ig.shape == doctest::Approx(2.5 + 4.5).epsilon(1e-15));
  CHECK(ig.scale == doctest::Approx(0.025).epsilon(1e-15));
}

TEST_CASE("sigma conditional matches the hand formula on two points") {
  const SvPriors priors{3.0, 0.5};
  const double mu = -1.0, phi = 0.6;
  const std::vector<double> h = {-0.4, -1.9};
  // By hand: stationary residual (h1-mu)^2 (1-phi^2) = 0.36 * 0.64 = 0.2304;
  // transition residual (h2 - mu - phi (h1 - mu))^2 = (-0.9 - 0.36)^2 = 1.5876.
  const auto ig = sv_sigma_conditional(h, mu, phi, priors);
  CHECK(ig.shape == doctest::Approx(3.0 + 1.0).epsilon(1e-15));
  CHECK(ig.scale == doctest::Approx(0.5 + 0.5 * (0.2304 + 1.5876)).epsilon(1e-12));
}

TEST_CASE("sigma draws have the analytic inverse-gamma mean") {
  Rng rng(34);
  const SvPriors priors{2.5, 0.025};
  const auto h = random_path(rng, 10, -1.0);
  const double mu = -1.1, phi = 0.5;
  const auto ig = sv_sigma_conditional(h, mu, phi, priors);
  REQUIRE(ig.shape > 2.0);

  const double analytic_mean = ig.scale / (ig.shape - 1.0);
  const double analytic_var =
      ig.scale * ig.scale / ((ig.shape - 1.0) * (ig.shape - 1.0) * (ig.shape - 2.0));

  const size_t n = 50000;
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) sum += sample_sigma_eta_sq(h, mu, phi, priors, rng);
  const double mean = sum / static_cast<double>(n);
  const double se = std::sqrt(analytic_var / static_cast<double>(n));
  CHECK(std::abs(mean - analytic_mean) < 3.0 * se);
}

TEST_CASE("phi acceptance ratio is unity at the current point") {
  Rng rng(35);
  const auto h = random_path(rng, 8, -1.0);
  const double mu = -1.0, sig2 = 0.3;
  for (double phi : {-0.6, 0.0, 0.4, 0.93})
    CHECK(sv_phi_log_accept_ratio(phi, phi, h, mu, sig2) == 0.0);
  // And the ratio is antisymmetric between two points.
  CHECK(sv_phi_log_accept_ratio(0.2, 0.7, h, mu, sig2) ==
        doctest::Approx(-sv_phi_log_accept_ratio(0.7, 0.2, h, mu, sig2))
            .epsilon(1e-14));
}

TEST_CASE("proposals outside the unit interval are rejected outright") {
  // A strongly trending path pushes the least-squares slope above one, so
  // the proposal lands outside (-1, 1) with near certainty.
  std::vector<double> h(8);
  for (size_t i = 0; i < h.size(); ++i) h[i] = std::pow(2.0, static_cast<double>(i));
  const double mu = 0.0, sig2 = 1e-6;
  const auto q = sv_phi_proposal(h, mu, sig2);
  REQUIRE(q.mean > 1.5);
  REQUIRE(std::sqrt(q.variance) < 0.01);

  Rng rng(36);
  for (int rep = 0; rep < 50; ++rep) {
    const auto draw = sample_phi(h, mu, sig2, 0.2, rng);
    CHECK(!draw.accepted);
    CHECK(draw.value == 0.2);
  }
}

TEST_CASE("phi draws match the grid quadrature of the conditional") {
  Rng rng(37);
  // Simulate a real latent path so the conditional is informative.
  SvGenSpec spec;
  spec.params = SvParams{-1.0, 0.8, 0.09};
  spec.n_days = 60;
  auto [series, truth] = gen_sv(spec, rng);
  const auto& h = truth.h;
  const double mu = -1.0, sig2 = 0.09;

  const auto ref = oracle::grid_cdf(
      [&](double phi) {
        // Full conditional: stationary factor, stationary quadratic, AR terms.
        double logp = 0.5 * std::log(1.0 - phi * phi);
        logp -= (h[0] - mu) * (h[0] - mu) * (1.0 - phi * phi) / (2.0 * sig2);
        for (size_t i = 1; i < h.size(); ++i) {
          const double e = h[i] - mu - phi * (h[i - 1] - mu);
          logp -= e * e / (2.0 * sig2);
        }
        return logp;
      },
      -0.999999, 0.999999, 40001);

  double phi = 0.5;
  std::vector<double> draws;
  draws.reserve(50000);
  for (size_t i = 0; i < 50000; ++i) {
    phi = sample_phi(h, mu, sig2, phi, rng).value;
    draws.push_back(phi);
  }
  CHECK(oracle::ks_distance(draws, ref) < 0.02);
}

TEST_CASE("fit rejects empty keep windows") {
  Rng rng(38);
  SvGenSpec spec;
  spec.params = SvParams{-1.0, 0.9, 0.05};
  spec.n_days = 50;
  auto [series, truth] = gen_sv(spec, rng);
  CHECK_THROWS_AS(run_sv_fit(series, SvPriors{}, HmcConfig{}, 10, 0, Rng(1)),
                  ContractError);
}

TEST_CASE("identical seeds give bit-identical chains") {
  Rng rng(39);
  SvGenSpec spec;
  spec.params = SvParams{-1.5, 0.9, 0.05};
  spec.n_days = 80;
  auto [series, truth] = gen_sv(spec, rng);

  HmcConfig cfg;
  const auto a = run_sv_fit(series, SvPriors{}, cfg, 150, 300, Rng(42), {9});
  const auto b = run_sv_fit(series, SvPriors{}, cfg, 150, 300, Rng(42), {9});
  CHECK(a.mu == b.mu);
  CHECK(a.phi == b.phi);
  CHECK(a.sigma_eta_sq == b.sigma_eta_sq);
  CHECK(a.h_traces[0] == b.h_traces[0]);
  CHECK(a.final_step_size == b.final_step_size);

  const auto c = run_sv_fit(series, SvPriors{}, cfg, 150, 300, Rng(43), {9});
  CHECK(a.mu != c.mu);
}

TEST_CASE("joint mu and sigma sweep matches a 2-D quadrature") {
  // Fixed latent path, fixed phi: alternating the two exact conditionals is
  // a two-block Gibbs sampler whose stationary law we can integrate on a
  // grid.
  Rng rng(40);
  const std::vector<double> h = {-0.6, -1.1, -0.2, -1.7};
  const double phi = 0.5;
  const SvPriors priors{2.5, 0.4};

  auto log_joint = [&](double mu, double sig2) {
    if (sig2 <= 0.0) return -1e300;
    double rss = (h[0] - mu) * (h[0] - mu) * (1.0 - phi * phi);
    for (size_t i = 1; i < h.size(); ++i) {
      const double e = h[i] - mu - phi * (h[i - 1] - mu);
      rss += e * e;
    }
    const double n = static_cast<double>(h.size());
    return -(priors.sigma_shape + 1.0 + 0.5 * n) * std::log(sig2) -
           priors.sigma_scale / sig2 - 0.5 * rss / sig2;
  };

  // 2-D Riemann quadrature on a 300 x 300 grid.
  const size_t g = 300;
  const double mu_lo = -4.0, mu_hi = 2.0, s_lo = 1e-4, s_hi = 4.0;
  double z = 0.0, m_mu = 0.0, m_sig = 0.0;
  for (size_t i = 0; i < g; ++i) {
    const double mu = mu_lo + (mu_hi - mu_lo) * static_cast<double>(i) / (g - 1.0);
    for (size_t j = 0; j < g; ++j) {
      const double sig2 = s_lo + (s_hi - s_lo) * static_cast<double>(j) / (g - 1.0);
      const double w = std::exp(log_joint(mu, sig2));
      z += w;
      m_mu += w * mu;
      m_sig += w * sig2;
    }
  }
  m_mu /= z;
  m_sig /= z;

  double mu = -1.0, sig2 = 0.5;
  const size_t sweeps = 200000;
  std::vector<double> mu_trace, sig_trace;
  mu_trace.reserve(sweeps);
  sig_trace.reserve(sweeps);
  for (size_t s = 0; s < sweeps; ++s) {
    mu = sample_mu(h, phi, sig2, rng);
    sig2 = sample_sigma_eta_sq(h, mu, phi, priors, rng);
    mu_trace.push_back(mu);
    sig_trace.push_back(sig2);
  }
  const auto mu_summary = summarize(mu_trace);
  const auto sig_summary = summarize(sig_trace);
  CHECK(std::abs(mu_summary.mean - m_mu) < 3.0 * mu_summary.se);
  CHECK(std::abs(sig_summary.mean - m_sig) < 3.0 * sig_summary.se);
}

TEST_CASE("synthetic parameters are recovered within three posterior sds") {
  Rng rng(41);
  SvGenSpec spec;
  spec.params = SvParams{-7.5, 0.97, 0.03};
  spec.n_days = 2000;
  auto [series, truth] = gen_sv(spec, rng);

  HmcConfig cfg;
  const auto chain = run_sv_fit(series, SvPriors{}, cfg, 2000, 8000, Rng(7), {9});

  const auto mu_s = summarize(chain.mu);
  const auto phi_s = summarize(chain.phi);
  const auto sig_s = summarize(chain.sigma_eta_sq);
  CHECK(std::abs(mu_s.mean - spec.params.mu) < 3.0 * mu_s.sd);
  CHECK(std::abs(phi_s.mean - spec.params.phi) < 3.0 * phi_s.sd);
  CHECK(std::abs(sig_s.mean - spec.params.sigma_eta_sq) < 3.0 * sig_s.sd);

  // Every retained draw satisfies the parameter invariants.
  for (size_t i = 0; i < chain.n_kept; ++i) {
    CHECK(std::abs(chain.phi[i]) < 1.0);
    CHECK(chain.sigma_eta_sq[i] > 0.0);
  }
}
