#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lstlp {

enum class TokenKind {
  Rebasing,       // price pinned at 1 ETH, rewards paid in token quantity (r > 0, g = 0)
  RewardBearing,  // rewards accrue through price growth (g > 0, r = 0)
};

std::string_view to_string(TokenKind kind) noexcept;
/// Accepts "rebasing" or "reward_bearing"; throws InvalidParams otherwise.
TokenKind parse_token_kind(std::string_view text);

/// Raw market and protocol scalars. All rates share one time unit
/// (documented as years; the formulas are unit-agnostic).
struct MarketInputs {
  double g = 0.0;          // LST price growth rate
  double sigma = 0.0;      // LST price volatility
  double r = 0.0;          // staking reward rate
  double m = 0.0;          // exit discount rate, D_t = exp(-m t)
  double rho = 0.0;        // investor discount rate
  double p0 = 1.0;         // initial LST price in ETH
  double fee_cap_k = 0.0;  // dimensionless fee cap constant K
  TokenKind token_kind = TokenKind::Rebasing;
};

/// Validated model parameters. Construction enforces positivity of
/// sigma, m, rho, p0, K and the token-kind coupling:
///   Rebasing      => p0 == 1, g == 0, r > 0
///   RewardBearing => p0 > 1,  g > 0, r == 0
class ModelParams {
 public:
  explicit ModelParams(const MarketInputs& inputs);

  static ModelParams rebasing(double r, double sigma, double m, double rho, double fee_cap_k);
  static ModelParams reward_bearing(double g, double p0, double sigma, double m, double rho,
                                    double fee_cap_k);

  double g() const noexcept { return in_.g; }
  double sigma() const noexcept { return in_.sigma; }
  double sigma_sq() const noexcept { return in_.sigma * in_.sigma; }
  double r() const noexcept { return in_.r; }
  double m() const noexcept { return in_.m; }
  double rho() const noexcept { return in_.rho; }
  double p0() const noexcept { return in_.p0; }
  double fee_cap_k() const noexcept { return in_.fee_cap_k; }
  TokenKind token_kind() const noexcept { return in_.token_kind; }

  const MarketInputs& inputs() const noexcept { return in_; }

 private:
  MarketInputs in_;
};

struct DerivedCoefficients {
  double d;  // sigma/2 - g/sigma, slope of the scaled barrier B_t = c + d t
};

DerivedCoefficients derived_coefficients(const ModelParams& params) noexcept;

/// r + g - rho - m > ln P0 with ln P0 >= 0. The rebasing boundary
/// ln P0 == 0 is admitted; see staking_incentive_at_boundary.
bool check_staking_incentive(const ModelParams& params) noexcept;

/// True when ln P0 == 0, i.e. the incentive condition is only met in its
/// non-strict form on the right-hand side.
bool staking_incentive_at_boundary(const ModelParams& params) noexcept;

namespace condition {
inline constexpr std::string_view kRewardRadicand = "reward_radicand_positive";  // d^2 - 2(g+r-m-rho) > 0
inline constexpr std::string_view kFeeRadicand = "fee_radicand_positive";  // d^2 - (g - s^2/4 - m - 2 rho) > 0
inline constexpr std::string_view kDPositive = "d_positive";                // d > 0
inline constexpr std::string_view kSigmaSqQuarterGtM = "sigma_sq_quarter_gt_m";  // s^2/4 - m > 0
inline constexpr std::string_view kStakingIncentive = "staking_incentive";
}  // namespace condition

/// Identifiers of the violated exit-timing assumptions, in a fixed order.
/// Empty when the fixed-threshold objective is well posed.
std::vector<std::string> check_exit_assumptions(const ModelParams& params);

/// E[D_t P_t] = P0 exp((g - m) t).
double expected_discounted_price(const ModelParams& params, double t);

/// E[sqrt(D_t P_t)] = sqrt(P0) exp((g/2 - sigma^2/8 - m/2) t).
double expected_sqrt_discounted_price(const ModelParams& params, double t);

/// E[(sqrt(D_t P_t) - sqrt(P0))^2], assembled from the two moments above.
double expected_squared_sqrt_gap(const ModelParams& params, double t);

}  // namespace lstlp
