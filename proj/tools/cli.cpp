#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lstlp/allocation.hpp"
#include "lstlp/cpmm.hpp"
#include "lstlp/errors.hpp"
#include "lstlp/exit_timing.hpp"
#include "lstlp/mc_oracle.hpp"
#include "lstlp/params_json.hpp"
#include "lstlp/tables.hpp"

namespace lstlp::cli {

namespace {

using nlohmann::json;

// Thrown for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string params_path;
  std::string format;  // empty: command default
  std::string out_path;
};

// Column-oriented result; printed as CSV or as a JSON array of objects.
struct Records {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return v.dump();
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

void flatten(const json& obj, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, keys, values);
    } else {
      keys.push_back(name);
      values.push_back(value.is_array() ? value.dump() : csv_cell(value));
    }
  }
}

class Emitter {
 public:
  Emitter(const GlobalOptions& opts, std::ostream& out) : opts_(opts), out_(out) {}

  void records(const Records& r) {
    std::ostringstream os;
    if (format_or("csv") == "csv") {
      write_csv_row(os, r.columns);
      for (const auto& row : r.rows) {
        std::vector<std::string> cells;
        for (const auto& v : row) cells.push_back(csv_cell(v));
        write_csv_row(os, cells);
      }
    } else {
      json arr = json::array();
      for (const auto& row : r.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << '\n';
    }
    write(os.str());
  }

  void object(const json& obj) {
    std::ostringstream os;
    if (format_or("json") == "json") {
      os << obj.dump(2) << '\n';
    } else {
      std::vector<std::string> keys, values;
      flatten(obj, "", keys, values);
      write_csv_row(os, keys);
      write_csv_row(os, values);
    }
    write(os.str());
  }

 private:
  std::string format_or(const char* fallback) const { return opts_.format.empty() ? fallback : opts_.format; }

  void write(const std::string& text) {
    if (opts_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(opts_.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + opts_.out_path);
    file << text;
  }

  const GlobalOptions& opts_;
  std::ostream& out_;
};

ModelParams require_params(const GlobalOptions& opts) {
  if (opts.params_path.empty()) throw UsageError("--params is required for this command");
  return load_params(opts.params_path);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json breakdown_json(const PayoffBreakdown& b) {
  return {{"fee", b.fee},
          {"impermanent_loss", b.impermanent_loss},
          {"opportunity", b.opportunity},
          {"no_fee_total", b.no_fee_total},
          {"with_fee_total", b.with_fee_total}};
}

const char* regime_name(FeeRegime regime) { return regime == FeeRegime::WithFees ? "with_fees" : "no_fees"; }

// ---- validate ----------------------------------------------------------

void cmd_validate(const GlobalOptions& opts, Emitter& emit) {
  const ModelParams p = require_params(opts);
  emit.object({{"staking_incentive", check_staking_incentive(p)},
               {"staking_incentive_boundary", staking_incentive_at_boundary(p)},
               {"exit_assumption_violations", check_exit_assumptions(p)},
               {"derived", {{"d", derived_coefficients(p).d}}}});
}

// ---- allocate ----------------------------------------------------------

struct AllocateOptions {
  double t = 1.0;
  std::optional<double> fee_override;
};

json decision_json(const AllocationDecision& d) {
  return {{"a_hold", d.a_hold}, {"x_lp_lst", d.x_lp_lst}, {"y_lp_eth", d.y_lp_eth}};
}

void cmd_allocate(const GlobalOptions& opts, const AllocateOptions& a, Emitter& emit) {
  const ModelParams p = require_params(opts);
  const FeeEvaluation fee_eval = cumulative_discounted_fee(p, a.t);
  const double fee = a.fee_override.value_or(fee_eval.cumulative_fee);
  const AllocationDecision decision = optimal_allocation(p, a.t, fee);
  emit.object({{"t", a.t},
               {"phi_threshold", fee_eval.phi_threshold},
               {"cumulative_fee", fee},
               {"fee_source", a.fee_override ? "override" : "minimal_schedule"},
               {"fee_cap", fee_cap(p)},
               {"capped", fee_eval.capped},
               {"indifference_gap", fee - fee_eval.phi_threshold},
               {"provide_liquidity", !decision.is_inactive()},
               {"decision", decision_json(decision)},
               {"objective", allocation_objective(decision, p, a.t, fee)},
               {"staking_objective", allocation_objective({}, p, a.t, fee)}});
}

// ---- pool --------------------------------------------------------------

struct PoolOptions {
  std::optional<double> invariant;
  std::optional<double> lst;
  std::optional<double> eth;
  double price = 1.0;
};

void cmd_pool(const GlobalOptions& opts, const PoolOptions& o, Emitter& emit) {
  if (o.invariant && (o.lst || o.eth)) throw UsageError("use either --invariant or --lst/--eth");
  if (o.invariant) {
    const RebalancedPool r = rebalance_pool(*o.invariant, o.price);
    emit.object({{"invariant_l", *o.invariant},
                 {"realized_price", o.price},
                 {"u_star", r.u_star},
                 {"v_star", r.v_star},
                 {"pool_value", r.pool_value},
                 {"marginal_rate", r.v_star / r.u_star}});
    return;
  }
  if (!o.lst || !o.eth) throw UsageError("pool needs --invariant, or both --lst and --eth");
  const RebalancedPool r = rebalance_position(*o.lst, *o.eth, o.price);
  json result = {{"lst_deposit", *o.lst},
                 {"eth_deposit", *o.eth},
                 {"realized_price", o.price},
                 {"u_star", r.u_star},
                 {"v_star", r.v_star},
                 {"position_value", r.pool_value}};
  if (!opts.params_path.empty() && *o.lst > 0.0) {
    result["provision_condition"] = check_provision_condition(*o.lst, *o.eth, load_params(opts.params_path).p0());
  }
  emit.object(result);
}

// ---- fee-curve ---------------------------------------------------------

struct FeeCurveOptions {
  double t_max = 5.0;
  int steps = 50;
};

void cmd_fee_curve(const GlobalOptions& opts, const FeeCurveOptions& o, Emitter& emit) {
  const ModelParams p = require_params(opts);
  if (!(o.t_max > 0.0) || o.steps < 1) throw UsageError("--t-max must be > 0 and --steps >= 1");
  Records rec{{"t", "fee_rate", "phi_threshold", "cumulative_fee", "capped"}, {}};
  for (int i = 0; i <= o.steps; ++i) {
    const double t = o.t_max * i / o.steps;
    const FeeEvaluation e = cumulative_discounted_fee(p, t);
    rec.rows.push_back({t, minimal_fee_rate(p, t), e.phi_threshold, e.cumulative_fee, e.capped});
  }
  emit.records(rec);
}

// ---- exit --------------------------------------------------------------

struct ExitOptions {
  bool fees = false;
  ExitSearch search;
};

void cmd_exit(const GlobalOptions& opts, const ExitOptions& o, Emitter& emit) {
  const ModelParams p = require_params(opts);
  const ExitOptimum opt = optimize_exit(p, o.fees ? FeeRegime::WithFees : FeeRegime::NoFees, o.search);
  json result = {{"c_star", opt.c_star},
                 {"l_over_p0", opt.l_over_p0},
                 {"l_star", opt.l_star},
                 {"v_star", opt.v_star},
                 {"regime", regime_name(opt.regime)},
                 {"foc_residual", opt.foc ? json(opt.foc->residual) : json(nullptr)},
                 {"second_order_ok", opt.foc ? json(opt.foc->second_order_ok) : json(nullptr)},
                 {"boundary_optimum", opt.boundary_optimum},
                 {"positive_side_sup", opt.positive_side_sup},
                 {"breakdown", breakdown_json(opt.breakdown)}};
  emit.object(result);
}

// ---- decompose ---------------------------------------------------------

struct DecomposeOptions {
  double c_from = -3.0;
  double c_to = -0.05;
  int steps = 100;
  bool fees = false;
  bool split_at_zero = false;
};

void cmd_decompose(const GlobalOptions& opts, const DecomposeOptions& o, Emitter& emit) {
  const ModelParams p = require_params(opts);
  if (o.steps < 1) throw UsageError("--steps must be >= 1");
  const double lo = std::min(o.c_from, o.c_to);
  const double hi = std::max(o.c_from, o.c_to);
  if (lo <= 0.0 && hi >= 0.0 && !o.split_at_zero) {
    throw UsageError("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "] contains c = 0; pass --split-at-zero to skip it");
  }
  const FeeRegime regime = o.fees ? FeeRegime::WithFees : FeeRegime::NoFees;
  Records rec{{"c", "l_over_p0", "fee", "impermanent_loss", "opportunity", "no_fee_total", "with_fee_total"}, {}};
  for (int i = 0; i <= o.steps; ++i) {
    const double c = o.c_from + (o.c_to - o.c_from) * i / o.steps;
    if (c == 0.0) continue;
    const auto th = StoppingThreshold::from_scaled(c, p);
    const PayoffBreakdown b = expected_payoff(th, p, regime);
    rec.rows.push_back({c, th.l_over_p0(), b.fee, b.impermanent_loss, b.opportunity, b.no_fee_total,
                        b.with_fee_total});
  }
  emit.records(rec);
}

// ---- table -------------------------------------------------------------

void cmd_table(int table_id, Emitter& emit) {
  const auto rows = reproduce_table(table_id);
  Records rec{{"setting", "sweep_param", "sweep_value", "nofee_c_star", "nofee_l_star", "nofee_v_star",
               "fee_c_star", "fee_l_star", "fee_v_star", "note"},
              {}};
  for (const auto& r : rows) {
    rec.rows.push_back({std::string(to_string(r.input.params.token_kind())), r.input.sweep_param,
                        r.input.sweep_value, r.no_fee.c_star, r.no_fee.l_over_p0, r.no_fee.v_star,
                        r.with_fee.c_star, r.with_fee.l_over_p0, r.with_fee.v_star, r.note});
  }
  emit.records(rec);
}

// ---- simulate ----------------------------------------------------------

struct SimulateOptions {
  double c = -1.0;
  std::size_t paths = 100000;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  bool fees = false;
  std::optional<double> horizon;
  unsigned threads = 1;
};

json quantity_json(const McEstimate& est, double closed_form) {
  return {{"estimate", est.mean},
          {"std_error", est.std_error},
          {"n_hit", est.n_hit},
          {"truncation_mass", est.truncation_mass},
          {"closed_form", closed_form},
          {"z_score", est.std_error > 0.0 ? json((est.mean - closed_form) / est.std_error) : json(nullptr)}};
}

void cmd_simulate(const GlobalOptions& opts, const SimulateOptions& o, Emitter& emit) {
  const ModelParams p = require_params(opts);
  const FeeRegime regime = o.fees ? FeeRegime::WithFees : FeeRegime::NoFees;
  const auto th = StoppingThreshold::from_scaled(o.c, p);
  const PayoffBreakdown cf = expected_payoff(th, p, regime);
  const PayoffTerms terms = payoff_terms(th, p);

  SimConfig config = SimConfig::for_threshold(o.c, th.d(), o.paths, o.seed);
  config.dt = o.dt;
  config.threads = o.threads;
  if (o.horizon) config.horizon = *o.horizon;
  config.validate();
  const McPayoffEstimate mc = estimate_exit_payoff(th, p, regime, config);

  const auto n = static_cast<double>(o.paths);
  const double hit_p = static_cast<double>(mc.no_fee_total.n_hit) / n;
  McEstimate hit{hit_p, std::sqrt(hit_p * (1.0 - hit_p) / n), mc.no_fee_total.n_hit, mc.no_fee_total.truncation_mass};

  McEstimate with_fee = mc.with_fee_total;
  json quantities = {{"fee_sum", quantity_json(mc.fee_uncapped, terms.fee_sum())},
                     {"impermanent_loss", quantity_json(mc.impermanent_loss, cf.impermanent_loss)},
                     {"opportunity", quantity_json(mc.opportunity, cf.opportunity)},
                     {"no_fee_total", quantity_json(mc.no_fee_total, cf.no_fee_total)},
                     {"with_fee_total", quantity_json(with_fee, cf.with_fee_total)}};
  emit.object({{"c", o.c},
               {"l_over_p0", th.l_over_p0()},
               {"regime", regime_name(regime)},
               {"n_paths", o.paths},
               {"dt", config.dt},
               {"horizon", config.horizon},
               {"seed", o.seed},
               {"fee", mc.fee},
               {"hit_probability", quantity_json(hit, laplace_hitting(o.c, th.d(), 0.0))},
               {"quantities", quantities}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liquid staking LP allocation and exit-threshold calculator", "lstlp"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--params", g.params_path, "ModelParams JSON file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "Write output to this file instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check the staking incentive and exit-timing assumptions");

  AllocateOptions alloc;
  auto* allocate = app.add_subcommand("allocate", "Optimal split among holding, staking and liquidity provision");
  allocate->add_option("--t", alloc.t, "Investment horizon")->check(CLI::NonNegativeNumber);
  allocate->add_option("--fee-override", alloc.fee_override, "Cumulative discounted fee to use instead of the minimal schedule");

  PoolOptions pool_opts;
  auto* pool = app.add_subcommand("pool", "Rebalanced CPMM reserves and position value");
  pool->add_option("--invariant", pool_opts.invariant, "Pool invariant L = X Y");
  pool->add_option("--lst", pool_opts.lst, "LST deposit");
  pool->add_option("--eth", pool_opts.eth, "ETH deposit");
  pool->add_option("--price", pool_opts.price, "Realized price (ETH per LST)");

  FeeCurveOptions curve;
  auto* fee_curve = app.add_subcommand("fee-curve", "Minimal fee rate and fee threshold over time");
  fee_curve->add_option("--t-max", curve.t_max, "Last time point");
  fee_curve->add_option("--steps", curve.steps, "Number of intervals");

  ExitOptions exit_opts;
  auto* exit_cmd = app.add_subcommand("exit", "Optimal fixed exit threshold");
  exit_cmd->add_flag("--fees,!--no-fees", exit_opts.fees, "Include capped transaction fees");
  exit_cmd->add_option("--c-min", exit_opts.search.c_min, "Lower end of the search interval");
  exit_cmd->add_option("--grid", exit_opts.search.grid_points, "Coarse grid size");
  exit_cmd->add_option("--tol", exit_opts.search.refine_tol, "Golden-section tolerance");

  DecomposeOptions dec;
  auto* decompose = app.add_subcommand("decompose", "Payoff components over a sweep of thresholds");
  decompose->add_option("--c-from", dec.c_from, "First threshold");
  decompose->add_option("--c-to", dec.c_to, "Last threshold");
  decompose->add_option("--steps", dec.steps, "Number of intervals");
  decompose->add_flag("--fees,!--no-fees", dec.fees, "Include capped transaction fees");
  decompose->add_flag("--split-at-zero", dec.split_at_zero, "Allow ranges containing c = 0 and skip that point");

  int table_id = 0;
  auto* table = app.add_subcommand("table", "Reproduce a built-in parametric table");
  table->add_option("--table", table_id, "Table id")->required()->check(CLI::Range(1, 6));

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the closed-form payoff at one threshold");
  simulate->add_option("--c", sim.c, "Scaled threshold (non-zero)")->required();
  simulate->add_option("--paths", sim.paths, "Number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--dt", sim.dt, "Finest time step")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_flag("--fees,!--no-fees", sim.fees, "Include capped transaction fees");
  simulate->add_option("--horizon", sim.horizon, "Censoring time")->check(CLI::PositiveNumber);
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

  std::vector<const char*> argv{"lstlp"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    Emitter emit(g, out);
    if (*validate) cmd_validate(g, emit);
    else if (*allocate) cmd_allocate(g, alloc, emit);
    else if (*pool) cmd_pool(g, pool_opts, emit);
    else if (*fee_curve) cmd_fee_curve(g, curve, emit);
    else if (*exit_cmd) cmd_exit(g, exit_opts, emit);
    else if (*decompose) cmd_decompose(g, dec, emit);
    else if (*table) cmd_table(table_id, emit);
    else if (*simulate) cmd_simulate(g, sim, emit);
    return kOk;
  } catch (const AssumptionViolation& e) {
    err << "assumption violated:";
    for (const auto& c : e.conditions()) err << ' ' << c;
    err << '\n';
    return kAssumptionViolation;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    // InvalidParams, DomainError, unreadable files and usage errors
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace lstlp::cli
