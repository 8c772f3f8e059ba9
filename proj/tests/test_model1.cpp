#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "liq/market_model.hpp"
#include "liq/model1.hpp"
#include "liq/numerics.hpp"

using liq::ImpactParams;
using liq::Model1Coefficients;
using liq::Trajectory;

namespace {
ImpactParams reference() { return ImpactParams{}; }
}  // namespace

TEST_CASE("closed-form constants at the reference parameters") {
  auto c = Model1Coefficients::from(reference());
  CHECK(c.kappa == doctest::Approx(1.1547005383792517).epsilon(1e-15));
  CHECK(c.xi == doctest::Approx(144.33756729740642).epsilon(1e-15));
  CHECK(c.zeta == doctest::Approx(-0.932712439368704).epsilon(1e-12));
  CHECK(c.zeta > -1.0);
  CHECK(c.zeta < 0.0);
}

TEST_CASE("coefficients require positive volatility") {
  ImpactParams p = reference();
  p.sigma = 0.0;
  CHECK_THROWS_AS(Model1Coefficients::from(p), std::invalid_argument);
}

TEST_CASE("hands-clean schedule endpoints and rate") {
  ImpactParams p = reference();
  auto grid = liq::uniform_grid(0.0, p.T, 1001);
  Trajectory det = liq::det_solution(p, grid);
  CHECK(det.inventory.front() == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(std::abs(det.inventory.back()) <= 1e-12);
  CHECK(det.rate.front() == doctest::Approx(140.93654128229747).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(det.inventory[i] < det.inventory[i - 1]);
  }
}

TEST_CASE("hands-clean schedule ignores eta and phi") {
  ImpactParams a = reference();
  ImpactParams b = reference();
  b.eta = 0.5;
  b.phi = 77.0;
  auto grid = liq::uniform_grid(0.0, a.T, 257);
  Trajectory ta = liq::det_solution(a, grid);
  Trajectory tb = liq::det_solution(b, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(ta.inventory[i] == tb.inventory[i]);
    CHECK(ta.rate[i] == tb.rate[i]);
  }
}

TEST_CASE("zero volatility degenerates to the linear schedule") {
  ImpactParams p = reference();
  p.sigma = 0.0;
  auto grid = liq::uniform_grid(0.0, p.T, 11);
  Trajectory det = liq::det_solution(p, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(det.inventory[i] ==
          doctest::Approx(p.Q * (1.0 - grid[i] / p.T)).epsilon(1e-14));
    CHECK(det.rate[i] == doctest::Approx(p.Q / p.T).epsilon(1e-14));
  }
}

TEST_CASE("hands-clean budget closes under quadrature") {
  ImpactParams p = reference();
  const int n = 1001;
  auto grid = liq::uniform_grid(0.0, p.T, n);
  Trajectory det = liq::det_solution(p, grid);
  double sold = liq::trapezoid(det.rate, det.times);
  // Trapezoid error on the convex rate is O(h^2); budget closes to that.
  double h = p.T / (n - 1);
  CHECK(std::abs(sold - p.Q) / p.Q <= 10.0 * h * h);
}

TEST_CASE("value coefficient endpoints and monotonicity") {
  ImpactParams p = reference();
  CHECK(liq::dp_coefficient(p, 0.0) ==
        doctest::Approx(-0.0046714404430300074).epsilon(1e-12));
  CHECK(std::abs(liq::dp_coefficient(p, p.T) + p.phi) <= 1e-15);
  auto grid = liq::uniform_grid(0.0, p.T, 101);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(liq::dp_coefficient(p, grid[i]) < liq::dp_coefficient(p, grid[i - 1]));
  }
}

TEST_CASE("value coefficient satisfies its differential equation") {
  // c' = gamma sigma^2 - (2c + eta)^2 / (4 nu), checked by central
  // differences at interior times.
  ImpactParams p = reference();
  const double h = 1e-5;
  for (double t : {0.1, 0.35, 0.6, 0.85}) {
    double c = liq::dp_coefficient(p, t);
    double deriv =
        (liq::dp_coefficient(p, t + h) - liq::dp_coefficient(p, t - h)) /
        (2.0 * h);
    double rhs = p.gamma * p.sigma * p.sigma -
                 (2.0 * c + p.eta) * (2.0 * c + p.eta) / (4.0 * p.nu);
    CHECK(deriv == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("penalized schedule follows the feedback rate") {
  ImpactParams p = reference();
  auto grid = liq::uniform_grid(0.0, p.T, 101);
  Trajectory dp = liq::dp_trajectory(p, grid);
  CHECK(dp.inventory.front() == doctest::Approx(100.0).epsilon(1e-14));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double expect = -(2.0 * liq::dp_coefficient(p, grid[i]) + p.eta) *
                    dp.inventory[i] / (2.0 * p.nu);
    CHECK(dp.rate[i] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(dp.terminal_inventory ==
        doctest::Approx(2.3370820890736965).epsilon(1e-12));
  CHECK(dp.terminal_inventory == doctest::Approx(liq::dp_terminal_inventory(p)));
}

TEST_CASE("value function is the coefficient times inventory squared") {
  ImpactParams p = reference();
  CHECK(liq::value_function(p, 0.0, 100.0) ==
        doctest::Approx(-46.714404430300074).epsilon(1e-12));
  CHECK(liq::value_function(p, 0.3, 0.0) == 0.0);
  double c = liq::dp_coefficient(p, 0.3);
  CHECK(liq::value_function(p, 0.3, 7.0) == doctest::Approx(c * 49.0));
}

TEST_CASE("penalty ladder tightens both sup gaps") {
  ImpactParams p = reference();
  auto grid = liq::uniform_grid(0.0, p.T, 501);
  std::vector<double> phis{1.0, 10.0, 100.0, 1000.0};
  auto rows = liq::convergence_report(p, phis, grid);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].sup_gap_rate < rows[i - 1].sup_gap_rate);
    CHECK(rows[i].sup_gap_inventory < rows[i - 1].sup_gap_inventory);
  }
  CHECK(rows.back().sup_gap_rate <= 1e-3);
  CHECK(rows.back().sup_gap_inventory <= 1e-3);
}

TEST_CASE("grid outside the horizon is rejected") {
  ImpactParams p = reference();
  std::vector<double> bad{0.0, 0.5, 1.5};
  CHECK_THROWS_AS(liq::det_solution(p, bad), std::invalid_argument);
  CHECK_THROWS_AS(liq::dp_trajectory(p, bad), std::invalid_argument);
}
