#pragma once

// Independent numerical oracles and parameter samplers shared by the unit
// and acceptance tests. Nothing here calls into the library's optimizers.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "lstlp/market_model.hpp"

namespace lstlp::testing {

namespace detail {

inline double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, detail::simpson(fa, fm, fb, a, b), tol, 50);
}

/// Bisection root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  if (flo * f(hi) > 0.0) throw std::invalid_argument("bisect: no sign change on bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Exponents of the no-fee objective for c < 0, computed from scratch.
struct Exponents {
  double d1, d2, d3;
};

inline Exponents exponents(const ModelParams& p) {
  const double s = p.sigma(), d = s / 2.0 - p.g() / s;
  return {-s / 2.0 + d - std::sqrt(d * d + p.m() + 2.0 * p.rho()),
          -s + d - std::sqrt(d * d - 2.0 * (p.r() + p.g() - p.rho() - p.m())),
          -s + d - std::sqrt(d * d + 2.0 * (p.rho() + p.m()))};
}

/// Draws parameter sets around the published sweeps: sigma^2 in [0.6, 1.0],
/// m in [0.04, 0.12], rho in [0.005, 0.05], and r in [0.10, 0.20]
/// (rebasing) or g in [0.10, 0.16] with P0 inside the incentive band
/// (reward-bearing). Draws are kept only if every exit assumption and the
/// staking incentive hold, plus the extra filters below.
struct ParamSampler {
  std::mt19937_64 rng;
  /// Require D1 > D2 so that the no-fee payoff is positive for every c < 0.
  bool require_positive_payoff = true;
  /// Require d^2 > 4(g + r - m - rho) + margin, which keeps the pathwise fee
  /// term square-integrable for Monte Carlo error bars. Negative disables.
  double finite_variance_margin = -1.0;

  explicit ParamSampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  ModelParams draw() {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      const double sigma = std::sqrt(uniform(0.6, 1.0));
      const double m = uniform(0.04, 0.12);
      const double rho = uniform(0.005, 0.05);
      const bool rebasing = uniform(0.0, 1.0) < 0.5;
      ModelParams p = rebasing ? ModelParams::rebasing(uniform(0.10, 0.20), sigma, m, rho, 2.0) : [&] {
        const double g = uniform(0.10, 0.16);
        const double headroom = g - rho - m;
        const double p0 = headroom > 0.0 ? std::exp(uniform(0.05, 0.95) * headroom) : 1.5;
        return ModelParams::reward_bearing(g, p0, sigma, m, rho, 2.0);
      }();
      if (!check_staking_incentive(p) || !check_exit_assumptions(p).empty()) continue;
      const Exponents e = exponents(p);
      if (require_positive_payoff && !(e.d1 > e.d2)) continue;
      const double d = derived_coefficients(p).d;
      if (finite_variance_margin >= 0.0 &&
          !(d * d - 4.0 * (p.g() + p.r() - p.m() - p.rho()) > finite_variance_margin)) {
        continue;
      }
      return p;
    }
    throw std::runtime_error("ParamSampler: no admissible draw");
  }
};

inline ModelParams table1_params(double r = 0.14) {
  return ModelParams::rebasing(r, std::sqrt(0.8), 0.08, 0.03, 2.0);
}

inline ModelParams table2_params(double g = 0.13) {
  return ModelParams::reward_bearing(g, 1.05, std::sqrt(0.8), 0.08, 0.03, 2.0);
}

}  // namespace lstlp::testing
