#include "lstlp/cpmm.hpp"

#include <cmath>

#include "lstlp/errors.hpp"

namespace lstlp {

namespace {

constexpr double kIdentityRelTol = 1e-12;

}  // namespace

PoolReserves::PoolReserves(double x_reserve, double y_reserve)
    : x_(x_reserve), y_(y_reserve), l_(x_reserve * y_reserve) {
  if (!(x_reserve > 0.0) || !(y_reserve > 0.0) || !std::isfinite(l_)) {
    throw DomainError("pool reserves must be finite and strictly positive");
  }
}

RebalancedPool rebalance_pool(double invariant_l, double realized_price) {
  if (!(invariant_l > 0.0)) throw DomainError("invariant L must be > 0");
  if (!(realized_price > 0.0)) throw DomainError("realized price must be > 0");
  const double u = std::sqrt(invariant_l / realized_price);
  const double v = std::sqrt(realized_price * invariant_l);
  return {u, v, 2.0 * std::sqrt(invariant_l * realized_price)};
}

RebalancedPool rebalance_position(double lst_deposit, double eth_deposit, double realized_price) {
  if (!(lst_deposit >= 0.0) || !(eth_deposit >= 0.0)) {
    throw DomainError("deposits must be >= 0");
  }
  if (!(realized_price > 0.0)) throw DomainError("realized price must be > 0");
  if (lst_deposit == 0.0 || eth_deposit == 0.0) return {0.0, 0.0, 0.0};
  return rebalance_pool(lst_deposit * eth_deposit, realized_price);
}

double position_value(double lst_deposit, double eth_deposit, double realized_price) {
  return rebalance_position(lst_deposit, eth_deposit, realized_price).pool_value;
}

LpPosition provision_for_share(const PoolReserves& pool, double share_lambda) {
  if (!(share_lambda > 0.0 && share_lambda < 1.0)) {
    throw DomainError("pool share must lie in (0, 1)");
  }
  return {share_lambda * pool.x_reserve(), share_lambda * pool.y_reserve(), share_lambda};
}

bool check_provision_condition(double lst_deposit, double eth_deposit, double p0) {
  if (!(lst_deposit > 0.0)) throw DomainError("LST deposit must be > 0");
  const double ratio = eth_deposit / lst_deposit;
  return std::abs(ratio - p0) <= kIdentityRelTol * std::abs(p0);
}

}  // namespace lstlp
