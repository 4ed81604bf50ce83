#pragma once

#include <array>
#include <optional>

#include "lstlp/market_model.hpp"

namespace lstlp {

enum class Direction {
  Up,    // c > 0: exit when the price rises to L
  Down,  // c < 0: exit when the price falls to L
};

enum class FeeRegime { NoFees, WithFees };

/// Fixed exit level in scaled coordinates. The stopping time is the first
/// t with B_t = c + d t, equivalently P_t reaching L = P0 exp(sigma c).
class StoppingThreshold {
 public:
  /// Throws DomainError for c == 0 or non-finite c.
  static StoppingThreshold from_scaled(double c, const ModelParams& params);
  /// Throws DomainError unless l_over_p0 > 0 and != 1.
  static StoppingThreshold from_price_ratio(double l_over_p0, const ModelParams& params);

  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double l_over_p0() const noexcept { return l_over_p0_; }
  Direction direction() const noexcept { return c_ > 0.0 ? Direction::Up : Direction::Down; }

 private:
  StoppingThreshold(double c, double d, double l_over_p0) : c_(c), d_(d), l_over_p0_(l_over_p0) {}

  double c_;
  double d_;
  double l_over_p0_;
};

/// E[exp(-lam T)] for T = inf{t : B_t = c + d t}, zero on {T = inf}:
///   c > 0: exp(-c (d + sqrt(d^2 + 2 lam)))
///   c < 0: exp(-c (d - sqrt(d^2 + 2 lam)))
/// Throws DomainError for c == 0 or d^2 + 2 lam < 0.
double laplace_hitting(double c, double d, double lam);

/// The six closed-form terms of the expected exit payoff. Terms 1-3 form
/// the (uncapped) expected fee, terms 4-6 the no-fee payoff.
struct PayoffTerms {
  std::array<double, 6> t{};

  double fee_sum() const noexcept { return t[0] + t[1] + t[2]; }
  double no_fee_sum() const noexcept { return t[3] + t[4] + t[5]; }
};

/// Throws AssumptionViolation when check_exit_assumptions is non-empty.
PayoffTerms payoff_terms(const StoppingThreshold& threshold, const ModelParams& params);

struct PayoffBreakdown {
  double fee = 0.0;               // min(T1+T2+T3, K), or 0 without fees
  double impermanent_loss = 0.0;  // always < 0
  double opportunity = 0.0;       // staking opportunity gain/loss, > 0 iff c < 0
  double no_fee_total = 0.0;      // impermanent_loss + opportunity
  double with_fee_total = 0.0;    // fee + no_fee_total
};

PayoffBreakdown expected_payoff(const StoppingThreshold& threshold, const ModelParams& params,
                                FeeRegime regime);

/// First-order condition of the no-fee objective in c and its concavity check.
struct FocResult {
  double residual;           // dE[M]/dc
  double second_derivative;  // d^2 E[M]/dc^2
  bool second_order_ok;      // second_derivative < 0
};

/// Exponents D1, D2, D3 of the no-fee objective for c < 0,
/// E[M] = e^{-c D1} - e^{-c D2}/2 - e^{-c D3}/2.
std::array<double, 3> no_fee_exponents(const ModelParams& params);

/// Throws DomainError for c >= 0.
FocResult foc_residual(double c, const ModelParams& params);

struct ExitSearch {
  double c_min = -200.0;
  int grid_points = 4000;
  double refine_tol = 1e-7;
  /// Smallest |c| on the log-spaced grid; c = 0 itself is excluded.
  double c_near_zero = 1e-6;
};

struct ExitOptimum {
  double c_star = 0.0;
  double l_over_p0 = 1.0;  // exp(sigma c_star)
  double l_star = 0.0;     // P0 exp(sigma c_star), in ETH
  double v_star = 0.0;
  FeeRegime regime = FeeRegime::NoFees;
  std::optional<FocResult> foc;   // NoFees only
  bool boundary_optimum = false;  // maximum at an end of the search grid
  double positive_side_sup = 0.0; // max of the objective over c in (0, |c_min|]
  PayoffBreakdown breakdown;
};

/// Maximizes the expected payoff over c in [c_min, 0): a log-spaced grid in
/// |c| brackets the peak, golden-section search refines it. Without fees
/// the sup over c > 0 must be <= 0; a violation raises NumericalFailure.
ExitOptimum optimize_exit(const ModelParams& params, FeeRegime regime, const ExitSearch& search = {});

}  // namespace lstlp
