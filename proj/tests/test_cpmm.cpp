#include <doctest.h>

#include <cmath>

#include "cpmm_properties.hpp"
#include "lstlp/cpmm.hpp"
#include "lstlp/errors.hpp"

using namespace lstlp;
using doctest::Approx;

TEST_SUITE("cpmm") {

TEST_CASE("rebalance_pool examples") {
  auto r = rebalance_pool(1.0, 1.0);
  CHECK(r.u_star == Approx(1.0));
  CHECK(r.v_star == Approx(1.0));
  CHECK(r.pool_value == Approx(2.0));

  r = rebalance_pool(4.0, 0.25);
  CHECK(r.u_star == Approx(4.0));
  CHECK(r.v_star == Approx(1.0));
  CHECK(r.pool_value == Approx(2.0));

  r = rebalance_pool(2.0, 0.5);
  CHECK(r.u_star == Approx(2.0));
  CHECK(r.v_star == Approx(1.0));
  CHECK(r.pool_value == Approx(2.0));

  CHECK_THROWS_AS(rebalance_pool(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(rebalance_pool(1.0, -1.0), DomainError);
}

TEST_CASE("rebalanced examples match a grid search on the curve") {
  for (auto [l, price] : {std::pair{4.0, 0.25}, std::pair{2.0, 0.5}}) {
    double best = HUGE_VAL, best_u = 0.0;
    for (int k = 0; k <= 200000; ++k) {
      const double u = 0.01 + k * (100.0 - 0.01) / 200000;
      const double v = price * u + l / u;
      if (v < best) best = v, best_u = u;
    }
    CHECK(best_u == Approx(rebalance_pool(l, price).u_star).epsilon(1e-3));
    CHECK(best >= 2.0 - 1e-9);
    CHECK(best < 2.0 + 1e-6);
  }
}

TEST_CASE("position_value examples") {
  CHECK(position_value(0.0, 0.0, 3.0) == 0.0);
  CHECK(position_value(0.0, 5.0, 3.0) == 0.0);
  CHECK(position_value(0.5, 0.5, 1.0) == Approx(1.0));
  CHECK(position_value(0.5, 0.5, 1.0) == Approx(rebalance_pool(0.25, 1.0).pool_value));
  CHECK(position_value(1.0, 1.0, 0.25) == Approx(1.0));
  CHECK_THROWS_AS(position_value(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(position_value(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("provision_for_share examples and scaling") {
  auto pos = provision_for_share(PoolReserves(10.0, 10.0), 0.1);
  CHECK(pos.lst_deposit == Approx(1.0));
  CHECK(pos.eth_deposit == Approx(1.0));
  CHECK(pos.share_lambda == 0.1);

  const PoolReserves pool(8.0, 2.0);
  pos = provision_for_share(pool, 0.25);
  CHECK(pos.lst_deposit == Approx(2.0));
  CHECK(pos.eth_deposit == Approx(0.5));
  for (double price : {0.1, 0.5, 1.0, 3.0, 40.0}) {
    CHECK(position_value(pos.lst_deposit, pos.eth_deposit, price) ==
          Approx(0.25 * rebalance_pool(pool.invariant_l(), price).pool_value).epsilon(1e-12));
  }

  CHECK_THROWS_AS(provision_for_share(pool, 0.0), DomainError);
  CHECK_THROWS_AS(provision_for_share(pool, 1.0), DomainError);
  CHECK_THROWS_AS(PoolReserves(0.0, 1.0), DomainError);
  CHECK(PoolReserves(3.0, 7.0).invariant_l() == 21.0);
}

TEST_CASE("provision condition") {
  CHECK(check_provision_condition(0.5, 0.5, 1.0));
  CHECK_FALSE(check_provision_condition(1.0, 2.0, 1.0));
  CHECK(check_provision_condition(1.0 / (2.0 * 1.1), 0.5, 1.1));
  CHECK_THROWS_AS(check_provision_condition(0.0, 0.5, 1.0), DomainError);
}

TEST_CASE("randomized properties") {
  CHECK(testing::cpmm_homogeneity_failures(200, 1) == 0);
  CHECK(testing::cpmm_conservation_failures(200, 2) == 0);
  CHECK(testing::cpmm_marginal_rate_failures(200, 3) == 0);
  CHECK(testing::cpmm_brute_force_failures(20, 4) == 0);
}

}  // TEST_SUITE
