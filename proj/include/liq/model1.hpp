#pragma once

#include <span>
#include <vector>

#include "liq/market_model.hpp"
#include "liq/trajectory.hpp"

namespace liq {

// Closed-form machinery for the fixed-horizon model. kappa drives the
// hands-clean schedule; xi and zeta drive the penalized one. Under
// liquidity dominance zeta lies in (-1, 0).
struct Model1Coefficients {
  double kappa;  // sqrt(gamma * sigma^2 / nu)
  double xi;     // 1 / (2 * sigma * sqrt(gamma * nu)), requires sigma > 0
  double zeta;   // (1 - xi*(2*phi - eta)) / (1 + xi*(2*phi - eta))

  static Model1Coefficients from(const ImpactParams& p);
};

// Hands-clean schedule X(t) = Q sinh(kappa(T-t)) / sinh(kappa T) with rate
// -X'. Independent of eta and phi; degenerates to the linear schedule
// Q(1 - t/T) when sigma = 0.
Trajectory det_solution(const ImpactParams& p, std::span<const double> grid);

// Quadratic value coefficient c(t) of the penalized problem. c(T) = -phi,
// strictly decreasing in the time-to-go, and 2c + eta <= 0 under liquidity
// dominance (so the feedback rate stays nonnegative).
double dp_coefficient(const ImpactParams& p, double t);

// Penalized schedule with feedback rate -(2c(t)+eta) X / (2 nu).
Trajectory dp_trajectory(const ImpactParams& p, std::span<const double> grid);

// Left limit of the penalized inventory at the horizon (dumped at cost
// phi * X^2). Shrinks to 0 as phi grows.
double dp_terminal_inventory(const ImpactParams& p);

// Value of holding q at time t under the penalized objective, c(t) * q^2.
double value_function(const ImpactParams& p, double t, double q);

struct ConvergenceRow {
  double phi;
  double sup_gap_rate;
  double sup_gap_inventory;
};

// Sup-norm gaps between the penalized and hands-clean schedules over a
// ladder of penalty values. Gaps shrink monotonically as phi grows.
std::vector<ConvergenceRow> convergence_report(const ImpactParams& p,
                                               std::span<const double> phis,
                                               std::span<const double> grid);

}  // namespace liq
