#include "liq/model1.hpp"

#include <cmath>
#include <stdexcept>

#include "liq/numerics.hpp"

namespace liq {

namespace {

// sinh(a)/sinh(b) and cosh(a)/sinh(b) for 0 <= a <= b, written in exp
// ratios so large arguments cannot overflow the intermediate terms.
double sinh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

double cosh_sinh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

void check_grid(const ImpactParams& p, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("model1: empty time grid");
  for (double t : grid) {
    if (!(t >= 0.0 && t <= p.T)) {
      throw std::invalid_argument("model1: grid node outside [0, T]");
    }
  }
}

}  // namespace

Model1Coefficients Model1Coefficients::from(const ImpactParams& p) {
  p.validate();
  if (!(p.sigma > 0.0)) {
    throw std::invalid_argument(
        "model1: sigma must be > 0 for the penalized coefficients");
  }
  Model1Coefficients c{};
  c.kappa = std::sqrt(p.gamma * p.sigma * p.sigma / p.nu);
  c.xi = 1.0 / (2.0 * p.sigma * std::sqrt(p.gamma * p.nu));
  const double w = c.xi * (2.0 * p.phi - p.eta);
  if (std::abs(1.0 + w) < 1e-300) {
    throw NumericalError("model1: zeta undefined, 1 + xi(2 phi - eta) = 0");
  }
  c.zeta = (1.0 - w) / (1.0 + w);
  return c;
}

Trajectory det_solution(const ImpactParams& p, std::span<const double> grid) {
  p.validate();
  check_grid(p, grid);

  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.inventory.resize(grid.size());
  out.rate.resize(grid.size());
  out.terminal_inventory = 0.0;
  out.constrained = true;  // schedule is nonnegative for any phi

  if (p.sigma == 0.0) {
    // kappa = 0 limit: straight-line liquidation at constant rate Q/T.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.inventory[i] = p.Q * (1.0 - grid[i] / p.T);
      out.rate[i] = p.Q / p.T;
    }
    return out;
  }

  const double kappa = std::sqrt(p.gamma * p.sigma * p.sigma / p.nu);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = kappa * (p.T - grid[i]);
    const double b = kappa * p.T;
    out.inventory[i] = p.Q * sinh_ratio(a, b);
    out.rate[i] = p.Q * kappa * cosh_sinh_ratio(a, b);
  }
  return out;
}

double dp_coefficient(const ImpactParams& p, double t) {
  const auto mc = Model1Coefficients::from(p);
  const double kappa = mc.kappa;
  const double E = std::exp(-2.0 * kappa * (p.T - t));
  const double den = mc.zeta * E + 1.0;
  if (std::abs(den) < 1e-12) {
    throw NumericalError("model1: value coefficient blow-up (zeta*E = -1)");
  }
  return 0.5 / mc.xi * (mc.zeta * E - 1.0) / den - 0.5 * p.eta;
}

Trajectory dp_trajectory(const ImpactParams& p, std::span<const double> grid) {
  const auto mc = Model1Coefficients::from(p);
  check_grid(p, grid);

  const double den = mc.zeta * std::exp(-2.0 * mc.kappa * p.T) + 1.0;
  if (std::abs(den) < 1e-12) {
    throw NumericalError("model1: trajectory blow-up (zeta*E = -1)");
  }

  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.inventory.resize(grid.size());
  out.rate.resize(grid.size());
  out.value_coeff.resize(grid.size());
  out.constrained = p.liquidity_dominance();

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double E = std::exp(-2.0 * mc.kappa * (p.T - t));
    const double c = 0.5 / mc.xi * (mc.zeta * E - 1.0) / (mc.zeta * E + 1.0) -
                     0.5 * p.eta;
    const double x =
        p.Q * (mc.zeta * E + 1.0) / den * std::exp(-mc.kappa * t);
    out.value_coeff[i] = c;
    out.inventory[i] = x;
    out.rate[i] = -(2.0 * c + p.eta) * x / (2.0 * p.nu);
  }
  out.terminal_inventory = dp_terminal_inventory(p);
  return out;
}

double dp_terminal_inventory(const ImpactParams& p) {
  const auto mc = Model1Coefficients::from(p);
  const double b = mc.kappa * p.T;
  return p.Q * (mc.zeta + 1.0) /
         (mc.zeta * std::exp(-b) + std::exp(b));
}

double value_function(const ImpactParams& p, double t, double q) {
  return dp_coefficient(p, t) * q * q;
}

std::vector<ConvergenceRow> convergence_report(const ImpactParams& p,
                                               std::span<const double> phis,
                                               std::span<const double> grid) {
  const Trajectory det = det_solution(p, grid);
  std::vector<ConvergenceRow> rows;
  rows.reserve(phis.size());
  for (double phi : phis) {
    ImpactParams q = p;
    q.phi = phi;
    const Trajectory dp = dp_trajectory(q, grid);
    ConvergenceRow row{phi, 0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      row.sup_gap_rate =
          std::max(row.sup_gap_rate, std::abs(dp.rate[i] - det.rate[i]));
      row.sup_gap_inventory = std::max(
          row.sup_gap_inventory, std::abs(dp.inventory[i] - det.inventory[i]));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace liq
