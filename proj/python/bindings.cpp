#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "lstlp/allocation.hpp"
#include "lstlp/cpmm.hpp"
#include "lstlp/errors.hpp"
#include "lstlp/exit_timing.hpp"
#include "lstlp/market_model.hpp"
#include "lstlp/mc_oracle.hpp"
#include "lstlp/params_json.hpp"
#include "lstlp/tables.hpp"

namespace py = pybind11;
using namespace lstlp;

namespace {

py::dict breakdown_dict(const PayoffBreakdown& b) {
  py::dict d;
  d["fee"] = b.fee;
  d["impermanent_loss"] = b.impermanent_loss;
  d["opportunity"] = b.opportunity;
  d["no_fee_total"] = b.no_fee_total;
  d["with_fee_total"] = b.with_fee_total;
  return d;
}

py::dict estimate_dict(const McEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["n_hit"] = e.n_hit;
  d["truncation_mass"] = e.truncation_mass;
  return d;
}

FeeRegime regime_of(bool with_fees) { return with_fees ? FeeRegime::WithFees : FeeRegime::NoFees; }

}  // namespace

PYBIND11_MODULE(lstlp, m) {
  m.doc() = "Liquid staking LP allocation, exit thresholds and Monte Carlo checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
  // Held for the lifetime of the interpreter; the translator below needs it.
  static py::handle assumption =
      py::exception<AssumptionViolation>(m, "AssumptionViolation", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const AssumptionViolation& e) {
      py::list names;
      for (const auto& c : e.conditions()) names.append(c);
      py::object err = py::reinterpret_borrow<py::object>(assumption)(e.what());
      err.attr("conditions") = names;
      PyErr_SetObject(assumption.ptr(), err.ptr());
    }
  });

  py::enum_<TokenKind>(m, "TokenKind")
      .value("Rebasing", TokenKind::Rebasing)
      .value("RewardBearing", TokenKind::RewardBearing);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double g, double sigma, double r, double m_, double rho, double p0, double k,
                       const std::string& kind) {
             return ModelParams(MarketInputs{g, sigma, r, m_, rho, p0, k, parse_token_kind(kind)});
           }),
           py::arg("g"), py::arg("sigma"), py::arg("r"), py::arg("m"), py::arg("rho"), py::arg("p0"),
           py::arg("fee_cap_k"), py::arg("token_kind"))
      .def_static("rebasing", &ModelParams::rebasing, py::arg("r"), py::arg("sigma"), py::arg("m"),
                  py::arg("rho"), py::arg("fee_cap_k"))
      .def_static("reward_bearing", &ModelParams::reward_bearing, py::arg("g"), py::arg("p0"), py::arg("sigma"),
                  py::arg("m"), py::arg("rho"), py::arg("fee_cap_k"))
      .def_static("from_json", [](const std::string& text) { return params_from_json_text(text); })
      .def("to_json", [](const ModelParams& p) { return params_to_json(p).dump(); })
      .def_property_readonly("g", &ModelParams::g)
      .def_property_readonly("sigma", &ModelParams::sigma)
      .def_property_readonly("r", &ModelParams::r)
      .def_property_readonly("m", &ModelParams::m)
      .def_property_readonly("rho", &ModelParams::rho)
      .def_property_readonly("p0", &ModelParams::p0)
      .def_property_readonly("fee_cap_k", &ModelParams::fee_cap_k)
      .def_property_readonly("token_kind", &ModelParams::token_kind)
      .def_property_readonly("d", [](const ModelParams& p) { return derived_coefficients(p).d; });

  m.def("check_staking_incentive", &check_staking_incentive);
  m.def("check_exit_assumptions", &check_exit_assumptions);
  m.def("expected_discounted_price", &expected_discounted_price, py::arg("params"), py::arg("t"));
  m.def("expected_sqrt_discounted_price", &expected_sqrt_discounted_price, py::arg("params"), py::arg("t"));

  m.def("rebalance_pool", [](double l, double price) {
    const auto r = rebalance_pool(l, price);
    return py::make_tuple(r.u_star, r.v_star, r.pool_value);
  }, py::arg("invariant_l"), py::arg("realized_price"));
  m.def("position_value", &position_value, py::arg("lst_deposit"), py::arg("eth_deposit"),
        py::arg("realized_price"));
  m.def("check_provision_condition", &check_provision_condition, py::arg("lst_deposit"),
        py::arg("eth_deposit"), py::arg("p0"));

  m.def("fee_threshold_phi", &fee_threshold_phi, py::arg("params"), py::arg("t"));
  m.def("minimal_fee_rate", &minimal_fee_rate, py::arg("params"), py::arg("t"));
  m.def("optimal_allocation", [](const ModelParams& p, double t, double fee) {
    const auto d = optimal_allocation(p, t, fee);
    return py::make_tuple(d.a_hold, d.x_lp_lst, d.y_lp_eth);
  }, py::arg("params"), py::arg("t"), py::arg("cumulative_fee"));

  m.def("laplace_hitting", &laplace_hitting, py::arg("c"), py::arg("d"), py::arg("lam"));
  m.def("payoff_terms", [](const ModelParams& p, double c) {
    return payoff_terms(StoppingThreshold::from_scaled(c, p), p).t;
  }, py::arg("params"), py::arg("c"));
  m.def("expected_payoff", [](const ModelParams& p, double c, bool with_fees) {
    return breakdown_dict(expected_payoff(StoppingThreshold::from_scaled(c, p), p, regime_of(with_fees)));
  }, py::arg("params"), py::arg("c"), py::arg("with_fees") = false);
  m.def("foc_residual", [](double c, const ModelParams& p) {
    const auto f = foc_residual(c, p);
    return py::make_tuple(f.residual, f.second_order_ok);
  }, py::arg("c"), py::arg("params"));
  m.def("optimize_exit", [](const ModelParams& p, bool with_fees, double c_min, int grid_points, double refine_tol) {
    const auto opt = optimize_exit(p, regime_of(with_fees), ExitSearch{c_min, grid_points, refine_tol});
    py::dict d;
    d["c_star"] = opt.c_star;
    d["l_star"] = opt.l_star;
    d["l_over_p0"] = opt.l_over_p0;
    d["v_star"] = opt.v_star;
    d["boundary_optimum"] = opt.boundary_optimum;
    d["foc_residual"] = opt.foc ? py::cast(opt.foc->residual) : py::none();
    d["breakdown"] = breakdown_dict(opt.breakdown);
    return d;
  }, py::arg("params"), py::arg("with_fees") = false, py::arg("c_min") = -200.0, py::arg("grid_points") = 4000,
     py::arg("refine_tol") = 1e-7);

  m.def("estimate_hitting_transform", [](double c, double d, double lam, std::size_t n_paths, std::uint64_t seed) {
    return estimate_dict(estimate_hitting_transform(c, d, lam, SimConfig::for_threshold(c, d, n_paths, seed)));
  }, py::arg("c"), py::arg("d"), py::arg("lam"), py::arg("n_paths") = 100000, py::arg("seed") = 1);
  m.def("estimate_exit_payoff", [](const ModelParams& p, double c, bool with_fees, std::size_t n_paths,
                                   std::uint64_t seed) {
    const auto th = StoppingThreshold::from_scaled(c, p);
    const auto est = estimate_exit_payoff(th, p, regime_of(with_fees),
                                          SimConfig::for_threshold(c, th.d(), n_paths, seed));
    py::dict d;
    d["fee_uncapped"] = estimate_dict(est.fee_uncapped);
    d["fee"] = est.fee;
    d["impermanent_loss"] = estimate_dict(est.impermanent_loss);
    d["opportunity"] = estimate_dict(est.opportunity);
    d["no_fee_total"] = estimate_dict(est.no_fee_total);
    d["with_fee_total"] = estimate_dict(est.with_fee_total);
    return d;
  }, py::arg("params"), py::arg("c"), py::arg("with_fees") = false, py::arg("n_paths") = 100000,
     py::arg("seed") = 1);

  m.def("reproduce_table", [](int id) {
    py::list rows;
    for (const auto& r : reproduce_table(id)) {
      py::dict d;
      d["setting"] = std::string(to_string(r.input.params.token_kind()));
      d["sweep_param"] = r.input.sweep_param;
      d["sweep_value"] = r.input.sweep_value;
      d["nofee_c_star"] = r.no_fee.c_star;
      d["nofee_l_star"] = r.no_fee.l_over_p0;
      d["nofee_v_star"] = r.no_fee.v_star;
      d["fee_c_star"] = r.with_fee.c_star;
      d["fee_l_star"] = r.with_fee.l_over_p0;
      d["fee_v_star"] = r.with_fee.v_star;
      d["note"] = r.note;
      rows.append(d);
    }
    return rows;
  }, py::arg("table_id"));
}
