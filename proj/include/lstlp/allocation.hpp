#pragma once

#include "lstlp/market_model.hpp"

namespace lstlp {

/// Time-0 split of one ETH: a_hold ETH kept unstaked, x_lp_lst LST and
/// y_lp_eth ETH supplied to the pool. Feasible decisions satisfy
/// y = P0 x, P0 x <= a <= 1 - P0 x and 0 <= x <= 1/(2 P0).
struct AllocationDecision {
  double a_hold = 0.0;
  double x_lp_lst = 0.0;
  double y_lp_eth = 0.0;

  bool is_inactive() const noexcept { return a_hold == 0.0 && x_lp_lst == 0.0 && y_lp_eth == 0.0; }
};

/// Liquidity-provision decision: supply half the ETH and the matching LST.
AllocationDecision provide_liquidity_decision(const ModelParams& params) noexcept;

struct FeeEvaluation {
  double horizon_t = 0.0;
  double phi_threshold = 0.0;   // Phi(t)
  double cumulative_fee = 0.0;  // min(Phi(t), 2 P0 K)
  bool capped = false;
};

/// Minimal cumulative discounted fee that makes liquidity provision weakly
/// preferable to pure staking at horizon t:
///   Phi(t) = P0 [ e^{(g-m-rho)t}(e^{rt}+1) - 2 e^{(g/2 - s^2/8 - m/2 - rho)t} ].
/// Can be negative at small t in some regimes; reported as is.
double fee_threshold_phi(const ModelParams& params, double t);

/// Fee rate phi_t whose discounted integral over [0, t] equals Phi(t).
/// The formula depends on the token kind.
double minimal_fee_rate(const ModelParams& params, double t);

/// Upper bound 2 P0 K on the cumulative discounted fee.
double fee_cap(const ModelParams& params) noexcept;

FeeEvaluation cumulative_discounted_fee(const ModelParams& params, double t);

/// Throws DomainError unless the decision is feasible (1e-12 slack).
void validate_decision(const AllocationDecision& decision, const ModelParams& params);

/// Linear objective of the allocation problem for a given cumulative
/// discounted fee (per unit of deposited LST).
double allocation_objective(const AllocationDecision& decision, const ModelParams& params, double t,
                            double cumulative_fee);

/// Provide liquidity iff cumulative_fee > Phi(t); indifference resolves to
/// inaction (0, 0, 0). Throws AssumptionViolation when the staking
/// incentive does not hold.
AllocationDecision optimal_allocation(const ModelParams& params, double t, double cumulative_fee);

}  // namespace lstlp
