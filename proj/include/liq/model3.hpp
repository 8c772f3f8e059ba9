#pragma once

#include <cstdint>
#include <vector>

#include "liq/market_model.hpp"
#include "liq/trajectory.hpp"

namespace liq {

// Counterparty firm value: geometric Brownian motion with drift beta and
// volatility xi, defaulting at the first passage of `barrier`. rho is the
// correlation between the firm and price noises.
struct FirmValueParams {
  double beta = -0.5;
  double xi = 2.0;
  double rho = 0.0;
  double y0 = 1000.0;
  double barrier = 10.0;

  // Throws std::invalid_argument naming the first offending field.
  // xi = 0 is allowed (deterministic firm value, degenerate PDE).
  void validate() const;

  // Standardized log-distance to default, (1/xi) ln(y / barrier).
  // Requires xi > 0 and y >= barrier.
  double log_distance(double y) const;

  // Drift of the standardized distance process, (1/xi)(xi^2/2 - beta);
  // default is the first passage of W_t + drift*t to log_distance(y0).
  double hitting_drift() const;
};

// E[e^{-u * tau}] for the first passage tau of W_t + drift*t to level
// `distance` >= 0; paths that never cross contribute zero mass.
double hitting_time_laplace(double drift, double distance, double u);

// Explicit-scheme grid for the log-distance PDE. r, u, v are the stencil
// weights; the scheme is stable when r <= 1 and u, v >= 0.
struct SolverGrid {
  int n_time = 0;   // N: steps in backward time, nodes 0..N
  int n_space = 0;  // M: steps in log-distance, nodes 0..M
  double x_max = 10.0;
  double horizon = 1.0;
  double dt = 0.0;
  double dx = 0.0;
  double r = 0.0;  // dt * xi^2 / dx^2
  double u = 0.0;  // r/2 + dt (beta - xi^2/2) / (2 dx)
  double v = 0.0;  // r/2 - dt (beta - xi^2/2) / (2 dx)
  bool stability_ok = false;

  // Node coordinates. The division form is exact at the end nodes; the
  // solver and its checks must share it to compare boundary values bitwise.
  double tau(int i) const { return horizon * i / n_time; }
  double x(int j) const { return x_max * j / n_space; }

  static SolverGrid make(double horizon, const FirmValueParams& fv,
                         int n_time, int n_space, double x_max = 10.0);

  // Largest n_space keeping r <= 0.9 with u, v >= 0. The 0.9 margin damps
  // the odd-even spatial mode, which right at r = 1 survives undamped and
  // breaks the surface's time monotonicity.
  static SolverGrid stable_default(double horizon, const FirmValueParams& fv,
                                   int n_time = 1000, double x_max = 10.0);
};

// Quadratic value-coefficient surface in backward time tau and standardized
// log-distance x. values[i][j] stores the PDE unknown htilde(tau_i, x_j);
// the value of holding q is ((htilde - eta)/2) * q^2. Rows i = 0 (tau = 0)
// and column j = 0 (barrier) are pinned at -2 phi + eta; column j = M is
// pinned to the fixed-horizon coefficient 2 c(T - tau) + eta.
struct ValueSurface {
  SolverGrid grid;
  ImpactParams impact;
  FirmValueParams firm;
  std::vector<std::vector<double>> values;

  double coeff(int time_index, int space_index) const {
    return values[time_index][space_index];
  }
};

// Explicit forward stepping in tau with one Picard iteration on the
// quadratic term. Throws NumericalError on an unstable grid unless `force`,
// on a Picard pivot below 1e-12, and on non-finite values (with the step).
ValueSurface solve_value_surface(const ImpactParams& p,
                                 const FirmValueParams& fv,
                                 const SolverGrid& grid, bool force = false);

// Feedback trade rate at (t, y, q): snaps log_distance(y) and t to their
// nearest grid nodes (ties toward the barrier / earlier time), returns
// -htilde * q / (2 nu) floored at 0. Throws std::domain_error when y sits
// below the barrier (default has already occurred).
double strategy_at(const ValueSurface& vs, double t, double y, double q);

// One realized liquidation path under the surface's feedback strategy.
// Arrays stop at the termination node. realized_gain is the mark-to-market
// gain including the terminal penalty; objective = realized_gain - gamma*QV.
struct LiquidationPath {
  std::vector<double> times;
  std::vector<double> log_firm;  // ln(Y_t)
  std::vector<double> inventory;
  std::vector<double> rate;
  std::vector<double> book_value;
  Termination termination;
  double terminal_penalty = 0.0;
  double realized_gain = 0.0;
  double quad_variation = 0.0;
  double objective = 0.0;
  bool clamped = false;  // executed rate was capped by remaining inventory
};

// Simulates the firm value by exact log-space increments on the surface's
// time grid, trades at strategy_at each step (Euler inventory update,
// clamped at 0), stops at the earlier of the barrier crossing and the
// horizon. The impact and firm parameters travel with the surface.
LiquidationPath simulate_liquidation(const ValueSurface& vs,
                                     std::uint64_t seed);

}  // namespace liq
