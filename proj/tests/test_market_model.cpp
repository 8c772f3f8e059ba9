#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "liq/market_model.hpp"

using liq::ImpactParams;

TEST_CASE("defaults satisfy liquidity dominance") {
  ImpactParams p;
  p.validate();
  CHECK(p.liquidity_dominance());
  // 2 phi = 0.2 vs eta + 2 sigma sqrt(gamma nu) = 0.0079...
  CHECK(p.eta + 2.0 * p.sigma * std::sqrt(p.gamma * p.nu) ==
        doctest::Approx(0.007928203230275509).epsilon(1e-12));
}

TEST_CASE("small penalty breaks liquidity dominance") {
  ImpactParams p;
  p.phi = 0.001;
  p.validate();
  CHECK_FALSE(p.liquidity_dominance());
}

TEST_CASE("dominance is recomputed from current fields") {
  ImpactParams p;
  CHECK(p.liquidity_dominance());
  p.phi = 0.0;
  CHECK_FALSE(p.liquidity_dominance());
  p.phi = 5.0;
  CHECK(p.liquidity_dominance());
}

TEST_CASE("validate names the offending field") {
  ImpactParams p;

  p.nu = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("nu"),
                       std::invalid_argument);

  p = ImpactParams{};
  p.eta = -0.1;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("eta"),
                       std::invalid_argument);

  p = ImpactParams{};
  p.T = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("T"),
                       std::invalid_argument);

  p = ImpactParams{};
  p.Q = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("Q"),
                       std::invalid_argument);

  p = ImpactParams{};
  p.gamma = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("gamma"),
                       std::invalid_argument);
}

TEST_CASE("impact functions are linear in the rate") {
  ImpactParams p;
  CHECK(p.permanent_impact(10.0) == doctest::Approx(-p.eta * 10.0));
  CHECK(p.temporary_impact(10.0) == doctest::Approx(-p.nu * 10.0));
  CHECK(p.permanent_impact(0.0) == 0.0);
}

TEST_CASE("running cost matches its definition") {
  ImpactParams p;
  double x = 40.0, th = 7.0;
  double expected = -p.nu * th * th - p.eta * x * th -
                    p.gamma * p.sigma * p.sigma * x * x;
  CHECK(p.running_cost(th, x) == doctest::Approx(expected).epsilon(1e-15));
}
