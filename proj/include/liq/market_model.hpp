#pragma once

namespace liq {

// Linear-impact execution parameters and the liquidation problem data.
// eta scales permanent impact, nu temporary impact, gamma risk aversion,
// phi the terminal-inventory penalty, Q the initial position, s0 the
// initial mid price (accounting only, never enters the optimal schedules).
struct ImpactParams {
  double eta = 0.001;
  double nu = 0.003;
  double gamma = 0.1;
  double sigma = 0.2;
  double phi = 0.1;
  double T = 1.0;
  double Q = 100.0;
  double s0 = 100.0;

  // Throws std::invalid_argument naming the first offending field.
  void validate() const;

  // Lasting mid-price drift per unit trading rate.
  double permanent_impact(double rate) const { return -eta * rate; }

  // Instantaneous execution-price discount; fills print at S + g(rate).
  double temporary_impact(double rate) const { return -nu * rate; }

  // Expected running reward of holding `inventory` while selling at `rate`:
  // -nu*rate^2 - eta*inventory*rate - gamma*sigma^2*inventory^2.
  double running_cost(double rate, double inventory) const;

  // Liquidity dominance 2*phi > eta + 2*sigma*sqrt(gamma*nu). Guarantees the
  // unconstrained penalized optimum is feasible (nonnegative rate, budget
  // respected). Monotone in phi; recomputed on demand, never cached.
  bool liquidity_dominance() const;
};

}  // namespace liq
