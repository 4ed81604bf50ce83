#include <doctest.h>

#include <cmath>

#include "lstlp/errors.hpp"
#include "lstlp/exit_timing.hpp"
#include "lstlp/mc_oracle.hpp"
#include "support.hpp"

using namespace lstlp;
using doctest::Approx;
using lstlp::testing::table1_params;

namespace {

bool within(const McEstimate& e, double expected, double k = 3.0) {
  return std::abs(e.mean - expected) <= k * e.std_error;
}

}  // namespace

TEST_SUITE("mc_oracle") {

TEST_CASE("config validation") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SimConfig{};
  cfg.horizon = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SimConfig{};
  cfg.n_paths = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK(SimConfig::for_threshold(-1.0, 0.4, 10, 1).horizon == 200.0);
  CHECK(SimConfig::for_threshold(1.0, 0.4, 10, 1).horizon == Approx(5000.0));
  CHECK_THROWS_AS(sample_first_passage(0.0, 0.4, SimConfig{}), DomainError);
}

TEST_CASE("summarize") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto e = summarize(xs);
  CHECK(e.mean == 2.5);
  CHECK(e.std_error == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(summarize(std::vector<double>{7.0}).std_error == 0.0);
}

TEST_CASE("log-price paths: zero-volatility limit") {
  const auto p = ModelParams::rebasing(0.14, 1e-9, 0.08, 0.03, 2.0);
  SimConfig cfg;
  cfg.n_paths = 20;
  cfg.dt = 0.01;
  cfg.horizon = 1.0;
  const auto paths = simulate_log_price(p, cfg);
  CHECK(paths.times.size() == 101);
  CHECK(paths.times.front() == 0.0);
  CHECK(paths.times.back() == 1.0);
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    CHECK(paths.path(i).front() == 0.0);
    for (double v : paths.path(i)) CHECK(std::abs(v) < 1e-8);  // a few sigma
  }
}

TEST_CASE("log-price paths: lognormal moments at t = 1") {
  const auto p = ModelParams::reward_bearing(0.13, 1.05, std::sqrt(0.8), 0.08, 0.03, 2.0);
  SimConfig cfg;
  cfg.n_paths = 100000;
  cfg.dt = 0.05;
  cfg.horizon = 1.0;
  cfg.seed = 77;
  const auto paths = simulate_log_price(p, cfg);
  std::vector<double> level(cfg.n_paths), log_level(cfg.n_paths);
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    log_level[i] = paths.path(i).back();
    level[i] = std::exp(log_level[i]);
  }
  CHECK(within(summarize(level), std::exp(p.g())));
  CHECK(within(summarize(log_level), p.g() - p.sigma_sq() / 2.0));
}

TEST_CASE("paths are deterministic and independent of the thread count") {
  const auto p = table1_params();
  SimConfig cfg;
  cfg.n_paths = 257;
  cfg.dt = 0.1;
  cfg.horizon = 3.0;
  cfg.seed = 5;
  const auto a = simulate_log_price(p, cfg);
  cfg.threads = 4;
  const auto b = simulate_log_price(p, cfg);
  CHECK(a.values == b.values);
  cfg.seed = 6;
  CHECK(simulate_log_price(p, cfg).values != a.values);

  SimConfig hit = SimConfig::for_threshold(-1.0, 0.45, 3001, 9);
  const auto e1 = estimate_hitting_transform(-1.0, 0.45, 0.1, hit);
  hit.threads = 3;
  const auto e2 = estimate_hitting_transform(-1.0, 0.45, 0.1, hit);
  CHECK(e1.mean == e2.mean);
  CHECK(e1.std_error == e2.std_error);
  CHECK(e1.n_hit == e2.n_hit);
}

TEST_CASE("hitting transform: almost-sure hitting below") {
  SimConfig cfg = SimConfig::for_threshold(-1.5, 0.4472, 20000, 3);
  const auto e = estimate_hitting_transform(-1.5, 0.4472, 0.0, cfg);
  CHECK(e.mean == Approx(1.0));
  CHECK(e.truncation_mass == 0.0);
  CHECK(e.n_hit == cfg.n_paths);

  double previous = 1.0;
  for (double horizon : {1.0, 4.0, 16.0}) {
    cfg.horizon = horizon;
    const auto short_run = estimate_hitting_transform(-1.5, 0.4472, 0.0, cfg);
    CHECK(short_run.truncation_mass < previous);
    CHECK(short_run.n_hit + static_cast<std::size_t>(std::llround(short_run.truncation_mass * cfg.n_paths)) ==
          cfg.n_paths);
    previous = short_run.truncation_mass;
  }
}

TEST_CASE("hitting transform: probability of reaching an upper level") {
  const double d = 0.4472;
  const auto e = estimate_hitting_transform(1.0, d, 0.0, SimConfig::for_threshold(1.0, d, 100000, 4));
  CHECK(within(e, std::exp(-2.0 * d)));
  CHECK(e.truncation_mass == Approx(1.0 - e.mean).epsilon(1e-12));
}

TEST_CASE("hitting transform: closed-form comparison") {
  const double d = 0.4472;
  const auto e = estimate_hitting_transform(-1.0, d, 0.17, SimConfig::for_threshold(-1.0, d, 200000, 8));
  CHECK(within(e, laplace_hitting(-1.0, d, 0.17)));
  CHECK_THROWS_AS(estimate_hitting_transform(-1.0, d, -1.0, SimConfig{}), DomainError);
}

TEST_CASE("hitting transform: randomized agreement") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int i = 0; i < 10; ++i) {
    const double c = (i % 2 ? 1.0 : -1.0) * (0.2 + 2.0 * u(rng));
    const double d = 0.2 + 0.5 * u(rng);
    const double lam = -0.4 * d * d + 0.3 * u(rng);
    const auto e = estimate_hitting_transform(c, d, lam, SimConfig::for_threshold(c, d, 40000, 100 + i));
    agree += within(e, laplace_hitting(c, d, lam)) ? 1 : 0;
  }
  CHECK(agree >= 9);
}

TEST_CASE("censoring bound") {
  const double c = -2.0, d = 0.4472, lam = 0.2;
  SimConfig cfg = SimConfig::for_threshold(c, d, 50000, 12);
  cfg.horizon = 3.0;
  const auto e = estimate_hitting_transform(c, d, lam, cfg);
  CHECK(e.truncation_mass > 0.1);
  CHECK(laplace_hitting(c, d, lam) - e.mean <= std::exp(-lam * cfg.horizon) + 3.0 * e.std_error);
}

TEST_CASE("exit payoff at the Table 1 optimum") {
  const auto p = table1_params();
  const auto th = StoppingThreshold::from_scaled(-1.298, p);
  const auto cf = expected_payoff(th, p, FeeRegime::WithFees);
  const auto terms = payoff_terms(th, p);
  const auto mc = estimate_exit_payoff(th, p, FeeRegime::WithFees, SimConfig::for_threshold(-1.298, th.d(), 500000, 2));
  CHECK(within(mc.no_fee_total, cf.no_fee_total));
  CHECK(std::abs(mc.no_fee_total.mean - 0.176) < 2e-3);
  CHECK(within(mc.impermanent_loss, cf.impermanent_loss));
  CHECK(within(mc.opportunity, cf.opportunity));
  CHECK(within(mc.fee_uncapped, terms.fee_sum()));
  CHECK(mc.impermanent_loss.mean < 0.0);
  CHECK(mc.opportunity.mean > 0.0);
  CHECK(mc.fee == mc.fee_uncapped.mean);  // below the cap
  CHECK(mc.with_fee_total.mean == Approx(mc.fee + mc.no_fee_total.mean).epsilon(1e-12));
}

TEST_CASE("exit payoff above the start is negative") {
  const auto p = table1_params();
  const auto th = StoppingThreshold::from_scaled(0.5, p);
  const auto mc = estimate_exit_payoff(th, p, FeeRegime::NoFees, SimConfig::for_threshold(0.5, th.d(), 50000, 21));
  CHECK(mc.no_fee_total.mean < 0.0);
  CHECK(mc.no_fee_total.truncation_mass > 0.0);
  CHECK(within(mc.no_fee_total, expected_payoff(th, p, FeeRegime::NoFees).no_fee_total));
}

TEST_CASE("fee cap is applied to the averaged fee") {
  auto p = ModelParams::rebasing(0.14, std::sqrt(0.8), 0.08, 0.03, 0.1);
  const auto th = StoppingThreshold::from_scaled(-1.298, p);
  const auto mc = estimate_exit_payoff(th, p, FeeRegime::WithFees, SimConfig::for_threshold(-1.298, th.d(), 20000, 4));
  CHECK(mc.fee_uncapped.mean > 0.1);
  CHECK(mc.fee == 0.1);
  CHECK(mc.with_fee_total.mean == Approx(0.1 + mc.no_fee_total.mean));
  CHECK(mc.with_fee_total.std_error == mc.no_fee_total.std_error);
}

}  // TEST_SUITE
