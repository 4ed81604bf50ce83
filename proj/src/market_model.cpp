#include "lstlp/market_model.hpp"

#include <cmath>

#include "lstlp/errors.hpp"

namespace lstlp {

AssumptionViolation::AssumptionViolation(std::vector<std::string> conditions)
    : std::domain_error([&] {
        std::string msg = "model assumption violated:";
        for (const auto& c : conditions) msg += " " + c;
        return msg;
      }()),
      conditions_(std::move(conditions)) {}

std::string_view to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::Rebasing:
      return "rebasing";
    case TokenKind::RewardBearing:
      return "reward_bearing";
  }
  return "unknown";
}

TokenKind parse_token_kind(std::string_view text) {
  if (text == "rebasing") return TokenKind::Rebasing;
  if (text == "reward_bearing") return TokenKind::RewardBearing;
  throw InvalidParams("token_kind must be \"rebasing\" or \"reward_bearing\", got \"" +
                      std::string(text) + "\"");
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace

ModelParams::ModelParams(const MarketInputs& in) : in_(in) {
  for (double v : {in.g, in.sigma, in.r, in.m, in.rho, in.p0, in.fee_cap_k}) {
    require(std::isfinite(v), "all parameters must be finite");
  }
  require(in.sigma > 0.0, "sigma must be > 0");
  require(in.m > 0.0, "m must be > 0");
  require(in.rho > 0.0, "rho must be > 0");
  require(in.p0 > 0.0, "p0 must be > 0");
  require(in.fee_cap_k > 0.0, "fee_cap_k must be > 0");
  require(in.g >= 0.0, "g must be >= 0");
  require(in.r >= 0.0, "r must be >= 0");

  if (in.token_kind == TokenKind::Rebasing) {
    require(in.p0 == 1.0, "rebasing tokens require p0 == 1");
    require(in.g == 0.0, "rebasing tokens require g == 0");
    require(in.r > 0.0, "rebasing tokens require r > 0");
  } else {
    require(in.p0 > 1.0, "reward-bearing tokens require p0 > 1");
    require(in.g > 0.0, "reward-bearing tokens require g > 0");
    require(in.r == 0.0, "reward-bearing tokens require r == 0");
  }
}

ModelParams ModelParams::rebasing(double r, double sigma, double m, double rho, double fee_cap_k) {
  return ModelParams(MarketInputs{.g = 0.0,
                                  .sigma = sigma,
                                  .r = r,
                                  .m = m,
                                  .rho = rho,
                                  .p0 = 1.0,
                                  .fee_cap_k = fee_cap_k,
                                  .token_kind = TokenKind::Rebasing});
}

ModelParams ModelParams::reward_bearing(double g, double p0, double sigma, double m, double rho,
                                        double fee_cap_k) {
  return ModelParams(MarketInputs{.g = g,
                                  .sigma = sigma,
                                  .r = 0.0,
                                  .m = m,
                                  .rho = rho,
                                  .p0 = p0,
                                  .fee_cap_k = fee_cap_k,
                                  .token_kind = TokenKind::RewardBearing});
}

DerivedCoefficients derived_coefficients(const ModelParams& p) noexcept {
  return {p.sigma() / 2.0 - p.g() / p.sigma()};
}

bool check_staking_incentive(const ModelParams& p) noexcept {
  const double log_p0 = std::log(p.p0());
  return log_p0 >= 0.0 && p.r() + p.g() - p.rho() - p.m() > log_p0;
}

bool staking_incentive_at_boundary(const ModelParams& p) noexcept { return std::log(p.p0()) == 0.0; }

std::vector<std::string> check_exit_assumptions(const ModelParams& p) {
  const double d = derived_coefficients(p).d;
  const double s2 = p.sigma_sq();
  std::vector<std::string> violated;
  if (!(d * d - 2.0 * (p.g() + p.r() - p.m() - p.rho()) > 0.0)) {
    violated.emplace_back(condition::kRewardRadicand);
  }
  if (!(d * d - (p.g() - s2 / 4.0 - p.m() - 2.0 * p.rho()) > 0.0)) {
    violated.emplace_back(condition::kFeeRadicand);
  }
  if (!(d > 0.0)) violated.emplace_back(condition::kDPositive);
  if (!(s2 / 4.0 - p.m() > 0.0)) violated.emplace_back(condition::kSigmaSqQuarterGtM);
  return violated;
}

namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
}

}  // namespace

double expected_discounted_price(const ModelParams& p, double t) {
  require_time(t);
  return p.p0() * std::exp((p.g() - p.m()) * t);
}

double expected_sqrt_discounted_price(const ModelParams& p, double t) {
  require_time(t);
  return std::sqrt(p.p0()) * std::exp((p.g() / 2.0 - p.sigma_sq() / 8.0 - p.m() / 2.0) * t);
}

double expected_squared_sqrt_gap(const ModelParams& p, double t) {
  return expected_discounted_price(p, t) -
         2.0 * std::sqrt(p.p0()) * expected_sqrt_discounted_price(p, t) + p.p0();
}

}  // namespace lstlp
