#pragma once

namespace lstlp {

/// Constant-product pool holding X units of LST and Y units of ETH.
class PoolReserves {
 public:
  /// Throws DomainError unless both reserves are strictly positive.
  PoolReserves(double x_reserve, double y_reserve);

  double x_reserve() const noexcept { return x_; }
  double y_reserve() const noexcept { return y_; }
  double invariant_l() const noexcept { return l_; }

 private:
  double x_;
  double y_;
  double l_;
};

/// An investor's deposit and the pool share it represents.
struct LpPosition {
  double lst_deposit = 0.0;
  double eth_deposit = 0.0;
  double share_lambda = 0.0;
};

/// Arbitrage-rebalanced reserves on the curve u v = L at an external price.
struct RebalancedPool {
  double u_star;      // LST units, sqrt(L / price)
  double v_star;      // ETH units, sqrt(price * L)
  double pool_value;  // price * u_star + v_star = 2 sqrt(L * price)
};

/// Minimizes price * u + v subject to u v = L.
RebalancedPool rebalance_pool(double invariant_l, double realized_price);

/// Value of a rebalanced x-LST / y-ETH deposit, 2 sqrt(x y price).
/// Zero when either deposit is zero.
RebalancedPool rebalance_position(double lst_deposit, double eth_deposit, double realized_price);
double position_value(double lst_deposit, double eth_deposit, double realized_price);

/// Deposit (lambda X, lambda Y) for a share lambda in the open interval (0, 1).
LpPosition provision_for_share(const PoolReserves& pool, double share_lambda);

/// Deposits keep the pool's marginal rate at P0: eth / lst == p0 to 1e-12 relative.
bool check_provision_condition(double lst_deposit, double eth_deposit, double p0);

}  // namespace lstlp
