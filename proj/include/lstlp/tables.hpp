#pragma once

#include <string>
#include <vector>

#include "lstlp/exit_timing.hpp"
#include "lstlp/market_model.hpp"

namespace lstlp {

/// Nominal initial price used for reward-bearing table rows. The optimum
/// in scaled units (c, L/P0, V) does not depend on P0; the value only has
/// to satisfy the reward-bearing invariant P0 > 1.
inline constexpr double kTableRewardP0 = 1.05;

struct TableCase {
  std::string sweep_param;  // "r", "g", "K", "m" or "rho"
  double sweep_value;
  ModelParams params;
};

/// Built-in parameter sweeps, fixed values rho = 0.03, sigma^2 = 0.8,
/// m = 0.08, K = 2 unless swept:
///   1: r in {0.12, ..., 0.20}, rebasing
///   2: g in {0.120, ..., 0.140}, reward-bearing
///   3: K in {2, ..., 6}, rebasing r = 0.14 then reward-bearing g = 0.13
///   4: m in {0.06, ..., 0.10}, rebasing r = 0.14
///   5: m in {0.070, ..., 0.090}, reward-bearing g = 0.13
///   6: rho in {0.010, ..., 0.030}, rebasing r = 0.14 then reward-bearing g = 0.13
/// Throws DomainError for any other id.
std::vector<TableCase> table_cases(int table_id);

struct TableRow {
  TableCase input;
  ExitOptimum no_fee;
  ExitOptimum with_fee;
  std::string note;  // non-empty when P0 != 1 or an optimum sits on the grid boundary
};

std::vector<TableRow> reproduce_table(int table_id, const ExitSearch& search = {});

}  // namespace lstlp
