#include "lstlp/tables.hpp"

#include <cmath>

#include "lstlp/errors.hpp"

namespace lstlp {

namespace {

constexpr double kSigma2 = 0.8;
constexpr double kM = 0.08;
constexpr double kRho = 0.03;
constexpr double kK = 2.0;

ModelParams rebasing(double r, double m = kM, double rho = kRho, double k = kK) {
  return ModelParams::rebasing(r, std::sqrt(kSigma2), m, rho, k);
}

ModelParams reward(double g, double m = kM, double rho = kRho, double k = kK) {
  return ModelParams::reward_bearing(g, kTableRewardP0, std::sqrt(kSigma2), m, rho, k);
}

}  // namespace

std::vector<TableCase> table_cases(int table_id) {
  std::vector<TableCase> out;
  switch (table_id) {
    case 1:
      for (double r : {0.12, 0.14, 0.16, 0.18, 0.20}) out.push_back({"r", r, rebasing(r)});
      break;
    case 2:
      for (double g : {0.120, 0.125, 0.130, 0.135, 0.140}) out.push_back({"g", g, reward(g)});
      break;
    case 3:
      for (double k : {2.0, 3.0, 4.0, 5.0, 6.0}) out.push_back({"K", k, rebasing(0.14, kM, kRho, k)});
      for (double k : {2.0, 3.0, 4.0, 5.0, 6.0}) out.push_back({"K", k, reward(0.13, kM, kRho, k)});
      break;
    case 4:
      for (double m : {0.06, 0.07, 0.08, 0.09, 0.10}) out.push_back({"m", m, rebasing(0.14, m)});
      break;
    case 5:
      for (double m : {0.070, 0.075, 0.080, 0.085, 0.090}) out.push_back({"m", m, reward(0.13, m)});
      break;
    case 6:
      for (double rho : {0.010, 0.015, 0.020, 0.025, 0.030}) {
        out.push_back({"rho", rho, rebasing(0.14, kM, rho)});
      }
      for (double rho : {0.010, 0.015, 0.020, 0.025, 0.030}) {
        out.push_back({"rho", rho, reward(0.13, kM, rho)});
      }
      break;
    default:
      throw DomainError("unknown table id " + std::to_string(table_id) + " (expected 1..6)");
  }
  return out;
}

std::vector<TableRow> reproduce_table(int table_id, const ExitSearch& search) {
  std::vector<TableRow> rows;
  for (auto& tc : table_cases(table_id)) {
    TableRow row{tc, optimize_exit(tc.params, FeeRegime::NoFees, search),
                 optimize_exit(tc.params, FeeRegime::WithFees, search), {}};
    if (tc.params.p0() != 1.0) row.note = "L reported as L/P0";
    if (row.no_fee.boundary_optimum || row.with_fee.boundary_optimum) {
      row.note += row.note.empty() ? "" : "; ";
      row.note += "boundary optimum";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lstlp
