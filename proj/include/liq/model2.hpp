#pragma once

#include <span>
#include <vector>

#include "liq/market_model.hpp"
#include "liq/numerics.hpp"
#include "liq/trajectory.hpp"

namespace liq {

// Termination intensity l(t) >= 0: either constant or a piecewise-linear
// table with constant extrapolation past the last knot.
class HazardSpec {
 public:
  static HazardSpec constant(double lambda);

  // times ascending from 0, rates nonnegative; at least one knot.
  static HazardSpec tabulated(std::vector<double> times,
                              std::vector<double> rates);

  double rate(double t) const;
  double cumulative(double t) const;  // integral of l over [0, t]
  bool is_constant() const { return constant_; }
  double constant_rate() const;

 private:
  HazardSpec() = default;
  bool constant_ = true;
  double lambda_ = 0.0;
  std::vector<double> times_;
  std::vector<double> rates_;
};

// P(termination time > t) = exp(-cumulative(t)).
double survival_probability(const HazardSpec& hazard, double t);

// Density of the termination time at t < T, l(t) * survival(t). The horizon
// itself carries the remaining point mass survival_probability(T).
double termination_density(const HazardSpec& hazard, double t);

// Termination time for a uniform draw from (0, 1]: the first t with
// cumulative(t) >= -log(p_uniform), capped at `horizon` (survival lands in
// the horizon point mass). Inverse-CDF sampling hook for the simulator.
double termination_time_quantile(const HazardSpec& hazard, double p_uniform,
                                 double horizon);

// Closed-form machinery under a constant hazard lambda. alpha plays the
// role kappa has in the fixed-horizon model; lambda = 0 collapses every
// quantity to its fixed-horizon counterpart.
struct Model2Coefficients {
  double alpha;     // sqrt(lambda^2/4 + (gamma sigma^2 + (phi - eta/2) lambda)/nu)
  double xi_hat;    // 1 / (2 * alpha * nu)
  double zeta_hat;  // (1 - xi_hat*(2 phi + lambda nu - eta)) / (1 + ...)

  static Model2Coefficients from(const ImpactParams& p, double lambda);
};

// Hands-clean schedule under constant hazard,
// X(t) = Q e^{lambda t / 2} sinh(alpha(T-t)) / sinh(alpha T).
Trajectory det_solution_const_hazard(const ImpactParams& p, double lambda,
                                     std::span<const double> grid);

// Hands-clean schedule under a general hazard via the two-point boundary
// problem X'' = l X' + ((gamma sigma^2 + (phi - eta/2) l)/nu) X with
// X(0) = Q, X(T) = 0; central differences on n_nodes points, rate by
// differencing (one-sided at the ends).
Trajectory det_bvp_solve(const ImpactParams& p, const HazardSpec& hazard,
                         int n_nodes);

// Quadratic value coefficient under constant hazard (closed form).
double dp_coefficient_const_hazard(const ImpactParams& p, double lambda,
                                   double t);

// Backward RK4 for the hazard-adjusted value coefficient,
// c' = l c + gamma sigma^2 + phi l - (2c + eta)^2 / (4 nu), c(T) = -phi.
// Throws NumericalError once |c| exceeds 1e6 * max(phi, 1) (blow-up guard
// for parameters far outside liquidity dominance).
OdeTable riccati_solve(const ImpactParams& p, const HazardSpec& hazard,
                       int n_steps);

// Penalized schedule under constant hazard (closed form), feedback rate
// -(2c+eta) X / (2 nu).
Trajectory dp_trajectory_const_hazard(const ImpactParams& p, double lambda,
                                      std::span<const double> grid);

// Penalized schedule for a tabulated coefficient: integrates the feedback
// rate through the table, X(t) = Q exp(-int_0^t (2c+eta)/(2 nu)).
Trajectory dp_trajectory_from_table(const ImpactParams& p,
                                    const OdeTable& coeff,
                                    std::span<const double> grid);

}  // namespace liq
