#include "lstlp/exit_timing.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lstlp/errors.hpp"
#include "lstlp/golden_section.hpp"

namespace lstlp {

StoppingThreshold StoppingThreshold::from_scaled(double c, const ModelParams& params) {
  if (!std::isfinite(c) || c == 0.0) throw DomainError("scaled threshold c must be finite and non-zero");
  return StoppingThreshold(c, derived_coefficients(params).d, std::exp(params.sigma() * c));
}

StoppingThreshold StoppingThreshold::from_price_ratio(double l_over_p0, const ModelParams& params) {
  if (!(l_over_p0 > 0.0) || l_over_p0 == 1.0 || !std::isfinite(l_over_p0)) {
    throw DomainError("price threshold L/P0 must be positive and different from 1");
  }
  return StoppingThreshold(std::log(l_over_p0) / params.sigma(), derived_coefficients(params).d,
                           l_over_p0);
}

double laplace_hitting(double c, double d, double lam) {
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("laplace_hitting: c must be finite and non-zero");
  const double radicand = d * d + 2.0 * lam;
  if (radicand < 0.0) throw DomainError("laplace_hitting: d^2 + 2 lam < 0, transform undefined");
  const double root = std::sqrt(radicand);
  return std::exp(-c * (c > 0.0 ? d + root : d - root));
}

namespace {

// exp(-c (shift + d +/- sqrt(d^2 + 2 lam))) with the sign chosen by the
// barrier direction; equals exp(-c shift) * laplace_hitting(c, d, lam).
double shifted_transform(double c, double d, double lam, double shift) {
  const double root = std::sqrt(d * d + 2.0 * lam);
  return std::exp(-c * (shift + d + (c > 0.0 ? root : -root)));
}

PayoffTerms terms_unchecked(double c, double d, const ModelParams& p) {
  const double g = p.g(), r = p.r(), m = p.m(), rho = p.rho(), s = p.sigma();
  const double s2 = p.sigma_sq();
  PayoffTerms out;
  out.t[0] = 0.5 * shifted_transform(c, d, -(g + r - m - rho), 0.0);
  out.t[1] = 0.5 * shifted_transform(c, d, -(g - m - rho), 0.0);
  out.t[2] = -shifted_transform(c, d, -(g - s2 / 4.0 - m - 2.0 * rho) / 2.0, 0.0);
  out.t[3] = shifted_transform(c, d, rho + m / 2.0, -s / 2.0);
  out.t[4] = -0.5 * shifted_transform(c, d, rho + m - r, -s);
  out.t[5] = -0.5 * shifted_transform(c, d, rho + m, -s);
  return out;
}

PayoffBreakdown breakdown_unchecked(double c, double d, const ModelParams& p, FeeRegime regime) {
  const double m = p.m(), rho = p.rho(), r = p.r(), s = p.sigma();
  const PayoffTerms terms = terms_unchecked(c, d, p);

  const double plain = shifted_transform(c, d, rho, 0.0);
  PayoffBreakdown out;
  out.impermanent_loss = 0.5 * (-shifted_transform(c, d, rho + m, -s) - plain +
                                2.0 * shifted_transform(c, d, rho + m / 2.0, -s / 2.0));
  out.opportunity = 0.5 * (-shifted_transform(c, d, rho + m - r, -s) + plain);
  out.no_fee_total = out.impermanent_loss + out.opportunity;
  out.fee = regime == FeeRegime::WithFees ? std::min(terms.fee_sum(), p.fee_cap_k()) : 0.0;
  out.with_fee_total = out.fee + out.no_fee_total;
  return out;
}

void require_exit_assumptions(const ModelParams& p) {
  auto violated = check_exit_assumptions(p);
  if (!violated.empty()) throw AssumptionViolation(std::move(violated));
}

}  // namespace

PayoffTerms payoff_terms(const StoppingThreshold& threshold, const ModelParams& params) {
  require_exit_assumptions(params);
  return terms_unchecked(threshold.c(), threshold.d(), params);
}

PayoffBreakdown expected_payoff(const StoppingThreshold& threshold, const ModelParams& params,
                                FeeRegime regime) {
  require_exit_assumptions(params);
  return breakdown_unchecked(threshold.c(), threshold.d(), params, regime);
}

std::array<double, 3> no_fee_exponents(const ModelParams& p) {
  const double d = derived_coefficients(p).d;
  const double s = p.sigma(), m = p.m(), rho = p.rho(), r = p.r();
  return {-s / 2.0 + d - std::sqrt(d * d + m + 2.0 * rho),
          -s + d - std::sqrt(d * d - 2.0 * (r - rho - m)),
          -s + d - std::sqrt(d * d + 2.0 * (rho + m))};
}

FocResult foc_residual(double c, const ModelParams& params) {
  if (!(c < 0.0)) throw DomainError("foc_residual requires c < 0");
  require_exit_assumptions(params);
  const auto [d1, d2, d3] = no_fee_exponents(params);
  const double e1 = std::exp(-c * d1), e2 = std::exp(-c * d2), e3 = std::exp(-c * d3);
  FocResult out;
  out.residual = -d1 * e1 + 0.5 * d2 * e2 + 0.5 * d3 * e3;
  out.second_derivative = d1 * d1 * e1 - 0.5 * d2 * d2 * e2 - 0.5 * d3 * d3 * e3;
  out.second_order_ok = out.second_derivative < 0.0;
  return out;
}

ExitOptimum optimize_exit(const ModelParams& params, FeeRegime regime, const ExitSearch& search) {
  if (!(search.c_min < 0.0) || search.grid_points < 3 || !(search.refine_tol > 0.0) ||
      !(search.c_near_zero > 0.0 && search.c_near_zero < -search.c_min)) {
    throw DomainError("invalid exit search configuration");
  }
  require_exit_assumptions(params);

  const double d = derived_coefficients(params).d;
  auto objective = [&](double c) { return breakdown_unchecked(c, d, params, regime).with_fee_total; };

  // Magnitudes |c| log-spaced from c_near_zero to |c_min|; index 0 is closest to 0.
  const auto n = static_cast<std::size_t>(search.grid_points);
  const double log_lo = std::log(search.c_near_zero);
  const double log_hi = std::log(-search.c_min);
  std::vector<double> magnitudes(n);
  for (std::size_t i = 0; i < n; ++i) {
    magnitudes[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  magnitudes.back() = -search.c_min;

  std::vector<double> values(n);
  std::size_t best = 0;
  double positive_sup = -HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = objective(-magnitudes[i]);
    if (values[i] > values[best]) best = i;
    positive_sup = std::max(positive_sup, objective(magnitudes[i]));
  }

  if (regime == FeeRegime::NoFees && positive_sup > 0.0) {
    throw NumericalFailure("no-fee objective is positive for some c > 0 (sup = " +
                           std::to_string(positive_sup) + ")");
  }

  ExitOptimum out;
  out.regime = regime;
  out.positive_side_sup = positive_sup;
  if (best == 0 || best == n - 1) {
    out.boundary_optimum = true;
    out.c_star = -magnitudes[best];
    out.v_star = values[best];
  } else {
    const auto peak = golden_section_maximize(objective, -magnitudes[best + 1], -magnitudes[best - 1],
                                              search.refine_tol);
    out.c_star = peak.x;
    out.v_star = peak.value;
    if (values[best] > out.v_star) {
      out.c_star = -magnitudes[best];
      out.v_star = values[best];
    }
  }
  out.l_over_p0 = std::exp(params.sigma() * out.c_star);
  out.l_star = params.p0() * out.l_over_p0;
  out.breakdown = breakdown_unchecked(out.c_star, d, params, regime);
  if (regime == FeeRegime::NoFees) out.foc = foc_residual(out.c_star, params);
  return out;
}

}  // namespace lstlp
