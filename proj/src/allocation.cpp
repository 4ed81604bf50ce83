#include "lstlp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lstlp/errors.hpp"

namespace lstlp {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
}

}  // namespace

AllocationDecision provide_liquidity_decision(const ModelParams& p) noexcept {
  return {0.5, 1.0 / (2.0 * p.p0()), 0.5};
}

double fee_threshold_phi(const ModelParams& p, double t) {
  require_time(t);
  const double s2 = p.sigma_sq();
  const double growth = std::exp((p.g() - p.m() - p.rho()) * t) * (std::exp(p.r() * t) + 1.0);
  const double sqrt_term = 2.0 * std::exp((p.g() / 2.0 - s2 / 8.0 - p.m() / 2.0 - p.rho()) * t);
  return p.p0() * (growth - sqrt_term);
}

double minimal_fee_rate(const ModelParams& p, double t) {
  require_time(t);
  // phi_t = e^{rho t} dPhi/dt, so that the discounted integral reproduces Phi.
  const double s2 = p.sigma_sq();
  const double g = p.g(), r = p.r(), m = p.m(), rho = p.rho();
  const double k2 = g / 2.0 - s2 / 8.0 - m / 2.0 - rho;
  double slope = 0.0;
  if (p.token_kind() == TokenKind::RewardBearing) {
    const double k1 = g - m - rho;
    slope = 2.0 * k1 * std::exp(k1 * t) - 2.0 * k2 * std::exp(k2 * t);
  } else {
    const double k1 = r - m - rho;
    const double k0 = -(m + rho);
    slope = k1 * std::exp(k1 * t) + k0 * std::exp(k0 * t) - 2.0 * k2 * std::exp(k2 * t);
  }
  return p.p0() * std::exp(rho * t) * slope;
}

double fee_cap(const ModelParams& p) noexcept { return 2.0 * p.p0() * p.fee_cap_k(); }

FeeEvaluation cumulative_discounted_fee(const ModelParams& p, double t) {
  const double phi = fee_threshold_phi(p, t);
  const double cap = fee_cap(p);
  return {t, phi, std::min(phi, cap), phi > cap};
}

void validate_decision(const AllocationDecision& dec, const ModelParams& p) {
  const double p0 = p.p0();
  const double lp_value = p0 * dec.x_lp_lst;
  auto fail = [](const char* what) { throw DomainError(std::string("infeasible allocation: ") + what); };
  if (!std::isfinite(dec.a_hold) || !std::isfinite(dec.x_lp_lst) || !std::isfinite(dec.y_lp_eth)) {
    fail("non-finite component");
  }
  if (dec.x_lp_lst < -kFeasibilitySlack || dec.x_lp_lst > 1.0 / (2.0 * p0) + kFeasibilitySlack) {
    fail("x outside [0, 1/(2 P0)]");
  }
  if (std::abs(dec.y_lp_eth - lp_value) > kFeasibilitySlack * std::max(1.0, std::abs(lp_value))) {
    fail("y != P0 x");
  }
  if (dec.a_hold < lp_value - kFeasibilitySlack || dec.a_hold > 1.0 - lp_value + kFeasibilitySlack) {
    fail("a outside [P0 x, 1 - P0 x]");
  }
}

double allocation_objective(const AllocationDecision& dec, const ModelParams& p, double t,
                            double cumulative_fee) {
  validate_decision(dec, p);
  const double discount = std::exp(-p.rho() * t);
  const double staked_growth = expected_discounted_price(p, t) * std::exp(p.r() * t) / p.p0();
  const double lp_coeff = -discount * expected_squared_sqrt_gap(p, t) + cumulative_fee;
  const double hold_coeff = -discount * (staked_growth - 1.0);
  return lp_coeff * dec.x_lp_lst + hold_coeff * dec.a_hold + discount * staked_growth;
}

AllocationDecision optimal_allocation(const ModelParams& p, double t, double cumulative_fee) {
  if (!check_staking_incentive(p)) {
    throw AssumptionViolation({std::string(condition::kStakingIncentive)});
  }
  if (cumulative_fee > fee_threshold_phi(p, t)) return provide_liquidity_decision(p);
  return {};
}

}  // namespace lstlp
