#pragma once

// Independent reference implementations backing the DERIVED expectations in
// the tests. Everything here is written straight from the model
// definitions, term by term, and never calls into the library code paths it
// is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---- stochastic volatility -------------------------------------------------

// Log of the unnormalized latent-path density, accumulated one term at a
// time: measurement terms, stationary prior on the first state, AR(1)
// transition terms.
inline double sv_log_density(const std::vector<double>& h, const std::vector<double>& y,
                             double mu, double phi, double sig2) {
  const size_t n = h.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) total += -(h[i] / 2.0);
  for (size_t i = 0; i < n; ++i) total += -(y[i] * y[i] / 2.0) * std::exp(-h[i]);
  total += -std::pow(h[0] - mu, 2.0) / (2.0 * sig2 / (1.0 - phi * phi));
  for (size_t i = 1; i < n; ++i)
    total += -std::pow(h[i] - mu - phi * (h[i - 1] - mu), 2.0) / (2.0 * sig2);
  return total;
}

// ---- finite differences ----------------------------------------------------

inline std::vector<double> finite_diff_grad(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
    double step = 1e-5) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + step;
    const double hi = f(x);
    x[i] = orig - step;
    const double lo = f(x);
    x[i] = orig;
    g[i] = (hi - lo) / (2.0 * step);
  }
  return g;
}

// ---- GARCH -----------------------------------------------------------------

inline std::vector<double> garch_recursion(const std::vector<double>& y, double omega,
                                           double alpha, double beta) {
  std::vector<double> s(y.size());
  s[0] = omega / (1.0 - alpha - beta);
  for (size_t t = 1; t < y.size(); ++t)
    s[t] = omega + alpha * y[t - 1] * y[t - 1] + beta * s[t - 1];
  return s;
}

inline double garch_normal_loglik(const std::vector<double>& y, double omega,
                                  double alpha, double beta) {
  const auto s = garch_recursion(y, omega, alpha, beta);
  double ll = 0.0;
  for (size_t t = 0; t < y.size(); ++t)
    ll += -0.5 * std::log(2.0 * M_PI * s[t]) - y[t] * y[t] / (2.0 * s[t]);
  return ll;
}

// ---- grid quadrature -------------------------------------------------------

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
};

// Moments of a 1-D density given by an unnormalized log-density on an
// equally spaced grid (spacing cancels).
inline MeanVar grid_moments(const std::function<double(double)>& logf, double lo,
                            double hi, size_t n) {
  std::vector<double> logw(n), x(n);
  double max_logw = -1e300;
  for (size_t i = 0; i < n; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    logw[i] = logf(x[i]);
    max_logw = std::max(max_logw, logw[i]);
  }
  double z = 0.0, m1 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double w = std::exp(logw[i] - max_logw);
    z += w;
    m1 += w * x[i];
  }
  const double mean = m1 / z;
  double m2 = 0.0;
  for (size_t i = 0; i < n; ++i)
    m2 += std::exp(logw[i] - max_logw) * (x[i] - mean) * (x[i] - mean);
  return MeanVar{mean, m2 / z};
}

// CDF table of the same construction, for distribution tests.
struct GridCdf {
  std::vector<double> x;
  std::vector<double> cdf;

  double at(double q) const {
    if (q <= x.front()) return 0.0;
    if (q >= x.back()) return 1.0;
    const auto it = std::upper_bound(x.begin(), x.end(), q);
    const size_t j = static_cast<size_t>(it - x.begin());
    const double t = (q - x[j - 1]) / (x[j] - x[j - 1]);
    return cdf[j - 1] + t * (cdf[j] - cdf[j - 1]);
  }
};

inline GridCdf grid_cdf(const std::function<double(double)>& logf, double lo, double hi,
                        size_t n) {
  GridCdf g;
  g.x.resize(n);
  g.cdf.resize(n);
  std::vector<double> w(n);
  double max_logw = -1e300;
  for (size_t i = 0; i < n; ++i) {
    g.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    w[i] = logf(g.x[i]);
    max_logw = std::max(max_logw, w[i]);
  }
  double z = 0.0;
  for (size_t i = 0; i < n; ++i) {
    w[i] = std::exp(w[i] - max_logw);
    z += w[i];
  }
  double run = 0.0;
  for (size_t i = 0; i < n; ++i) {
    run += w[i];
    g.cdf[i] = run / z;
  }
  return g;
}

// Kolmogorov-Smirnov distance between a sample and a reference CDF.
inline double ks_distance(std::vector<double> draws, const GridCdf& ref) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (size_t i = 0; i < draws.size(); ++i) {
    const double f = ref.at(draws[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

// ---- rank statistics ---------------------------------------------------------

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i + 1);
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: bad input");
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

// ---- simplex search ----------------------------------------------------------

// Plain Nelder-Mead minimizer, good enough for low-dimensional likelihood
// hill climbs in tests.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    double scale = 0.1, int iters = 2000) {
  const size_t d = x0.size();
  std::vector<std::vector<double>> simplex(d + 1, x0);
  for (size_t i = 0; i < d; ++i) simplex[i + 1][i] += scale;
  std::vector<double> fx(d + 1);
  for (size_t i = 0; i <= d; ++i) fx[i] = f(simplex[i]);

  for (int it = 0; it < iters; ++it) {
    std::vector<size_t> order(d + 1);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fx[a] < fx[b]; });

    const size_t best = order[0], worst = order[d], second_worst = order[d - 1];
    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);
    }

    auto blend = [&](double t) {
      std::vector<double> p(d);
      for (size_t k = 0; k < d; ++k)
        p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return p;
    };

    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < fx[best]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        fx[worst] = fe;
      } else {
        simplex[worst] = reflected;
        fx[worst] = fr;
      }
    } else if (fr < fx[second_worst]) {
      simplex[worst] = reflected;
      fx[worst] = fr;
    } else {
      const auto contracted = blend(0.5);
      const double fc = f(contracted);
      if (fc < fx[worst]) {
        simplex[worst] = contracted;
        fx[worst] = fc;
      } else {
        for (size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (size_t k = 0; k < d; ++k)
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          fx[i] = f(simplex[i]);
        }
      }
    }
  }
  const size_t best = static_cast<size_t>(
      std::min_element(fx.begin(), fx.end()) - fx.begin());
  return simplex[best];
}

}  // namespace oracle
