#include "liq/model2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace liq {

namespace {

double sinh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

double cosh_sinh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

void check_grid(const ImpactParams& p, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("model2: empty time grid");
  for (double t : grid) {
    if (!(t >= 0.0 && t <= p.T)) {
      throw std::invalid_argument("model2: grid node outside [0, T]");
    }
  }
}

}  // namespace

HazardSpec HazardSpec::constant(double lambda) {
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw std::invalid_argument("hazard: constant rate must be finite and >= 0");
  }
  HazardSpec h;
  h.constant_ = true;
  h.lambda_ = lambda;
  return h;
}

HazardSpec HazardSpec::tabulated(std::vector<double> times,
                                 std::vector<double> rates) {
  if (times.empty() || times.size() != rates.size()) {
    throw std::invalid_argument("hazard: table must be nonempty, equal lengths");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw std::invalid_argument("hazard: knot time must be finite and >= 0");
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      throw std::invalid_argument("hazard: knot times must be increasing");
    }
    if (!std::isfinite(rates[i]) || rates[i] < 0.0) {
      throw std::invalid_argument("hazard: rate must be finite and >= 0");
    }
  }
  HazardSpec h;
  h.constant_ = false;
  h.times_ = std::move(times);
  h.rates_ = std::move(rates);
  return h;
}

double HazardSpec::rate(double t) const {
  if (constant_) return lambda_;
  return interp_linear(times_, rates_, t);
}

double HazardSpec::cumulative(double t) const {
  if (t <= 0.0) return 0.0;
  if (constant_) return lambda_ * t;

  double acc = 0.0;
  // Constant extrapolation before the first knot.
  double seg_start = 0.0;
  if (times_.front() > 0.0) {
    const double end = std::min(t, times_.front());
    acc += rates_.front() * end;
    if (t <= times_.front()) return acc;
    seg_start = times_.front();
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (t <= times_[i - 1]) break;
    const double lo = std::max(seg_start, times_[i - 1]);
    const double hi = std::min(t, times_[i]);
    if (hi > lo) {
      acc += 0.5 * (rate(lo) + rate(hi)) * (hi - lo);
    }
  }
  if (t > times_.back()) {
    acc += rates_.back() * (t - times_.back());
  }
  return acc;
}

double HazardSpec::constant_rate() const {
  if (!constant_) {
    throw std::logic_error("hazard: constant_rate() on a tabulated spec");
  }
  return lambda_;
}

double survival_probability(const HazardSpec& hazard, double t) {
  return std::exp(-hazard.cumulative(t));
}

double termination_density(const HazardSpec& hazard, double t) {
  return hazard.rate(t) * survival_probability(hazard, t);
}

double termination_time_quantile(const HazardSpec& hazard, double p_uniform,
                                 double horizon) {
  if (!(p_uniform > 0.0 && p_uniform <= 1.0)) {
    throw std::invalid_argument("hazard: quantile draw must be in (0, 1]");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("hazard: quantile horizon must be > 0");
  }
  const double target = -std::log(p_uniform);
  if (hazard.is_constant()) {
    const double l = hazard.constant_rate();
    if (l == 0.0) return horizon;
    return std::min(horizon, target / l);
  }
  if (hazard.cumulative(horizon) < target) return horizon;
  // cumulative is continuous and nondecreasing: bisect.
  double lo = 0.0, hi = horizon;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * horizon; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hazard.cumulative(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

Model2Coefficients Model2Coefficients::from(const ImpactParams& p,
                                            double lambda) {
  p.validate();
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw std::invalid_argument("model2: lambda must be finite and >= 0");
  }
  const double alpha_sq =
      lambda * lambda / 4.0 +
      (p.gamma * p.sigma * p.sigma + (p.phi - 0.5 * p.eta) * lambda) / p.nu;
  if (!(alpha_sq > 0.0)) {
    throw std::invalid_argument(
        "model2: degenerate dynamics (alpha^2 <= 0); needs sigma > 0 or "
        "lambda > 0 with sufficient penalty");
  }
  Model2Coefficients c{};
  c.alpha = std::sqrt(alpha_sq);
  c.xi_hat = 1.0 / (2.0 * c.alpha * p.nu);
  const double w = c.xi_hat * (2.0 * p.phi + lambda * p.nu - p.eta);
  if (std::abs(1.0 + w) < 1e-300) {
    throw NumericalError("model2: zeta undefined, 1 + xi(2 phi + lambda nu - eta) = 0");
  }
  c.zeta_hat = (1.0 - w) / (1.0 + w);
  return c;
}

Trajectory det_solution_const_hazard(const ImpactParams& p, double lambda,
                                     std::span<const double> grid) {
  p.validate();
  check_grid(p, grid);
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw std::invalid_argument("model2: lambda must be finite and >= 0");
  }

  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.inventory.resize(grid.size());
  out.rate.resize(grid.size());
  out.terminal_inventory = 0.0;
  out.constrained = true;

  if (p.sigma == 0.0 && lambda == 0.0) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.inventory[i] = p.Q * (1.0 - grid[i] / p.T);
      out.rate[i] = p.Q / p.T;
    }
    return out;
  }

  const double alpha_sq =
      lambda * lambda / 4.0 +
      (p.gamma * p.sigma * p.sigma + (p.phi - 0.5 * p.eta) * lambda) / p.nu;
  if (!(alpha_sq > 0.0)) {
    throw std::invalid_argument("model2: degenerate dynamics (alpha^2 <= 0)");
  }
  const double alpha = std::sqrt(alpha_sq);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double a = alpha * (p.T - t);
    const double b = alpha * p.T;
    const double growth = std::exp(0.5 * lambda * t);
    out.inventory[i] = p.Q * sinh_ratio(a, b) * growth;
    out.rate[i] =
        p.Q * growth *
        (alpha * cosh_sinh_ratio(a, b) - 0.5 * lambda * sinh_ratio(a, b));
  }
  return out;
}

Trajectory det_bvp_solve(const ImpactParams& p, const HazardSpec& hazard,
                         int n_nodes) {
  p.validate();
  if (n_nodes < 3) throw std::invalid_argument("model2: bvp needs >= 3 nodes");

  const int n = n_nodes;
  const double h = p.T / (n - 1);
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = p.T * j / (n - 1);

  // Interior equations: (X[j+1] - 2X[j] + X[j-1])/h^2
  //   = l_j (X[j+1] - X[j-1])/(2h) + q_j X[j].
  TridiagonalSystem sys;
  sys.lower.resize(n - 3);
  sys.diag.resize(n - 2);
  sys.upper.resize(n - 3);
  sys.rhs.assign(n - 2, 0.0);
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 1; j <= n - 2; ++j) {
    const double l = hazard.rate(t[j]);
    const double q =
        (p.gamma * p.sigma * p.sigma + (p.phi - 0.5 * p.eta) * l) / p.nu;
    const double sub = inv_h2 + l / (2.0 * h);
    const double sup = inv_h2 - l / (2.0 * h);
    const int k = j - 1;
    sys.diag[k] = -2.0 * inv_h2 - q;
    if (k > 0) sys.lower[k - 1] = sub;
    if (k < n - 3) sys.upper[k] = sup;
    if (j == 1) sys.rhs[k] -= sub * p.Q;  // X[0] = Q
    // X[n-1] = 0 contributes nothing.
  }
  const std::vector<double> interior = solve_tridiagonal(sys);

  Trajectory out;
  out.times = t;
  out.inventory.resize(n);
  out.inventory[0] = p.Q;
  out.inventory[n - 1] = 0.0;
  for (int j = 1; j <= n - 2; ++j) out.inventory[j] = interior[j - 1];

  out.rate.resize(n);
  out.rate[0] = (out.inventory[0] - out.inventory[1]) / h;
  for (int j = 1; j <= n - 2; ++j) {
    out.rate[j] = (out.inventory[j - 1] - out.inventory[j + 1]) / (2.0 * h);
  }
  out.rate[n - 1] = (out.inventory[n - 2] - out.inventory[n - 1]) / h;
  out.terminal_inventory = 0.0;
  out.constrained = p.liquidity_dominance();
  return out;
}

double dp_coefficient_const_hazard(const ImpactParams& p, double lambda,
                                   double t) {
  const auto mc = Model2Coefficients::from(p, lambda);
  const double E = std::exp(-2.0 * mc.alpha * (p.T - t));
  const double den = mc.zeta_hat * E + 1.0;
  if (std::abs(den) < 1e-12) {
    throw NumericalError("model2: value coefficient blow-up (zeta*E = -1)");
  }
  return 0.5 / mc.xi_hat * (mc.zeta_hat * E - 1.0) / den +
         0.5 * (lambda * p.nu - p.eta);
}

OdeTable riccati_solve(const ImpactParams& p, const HazardSpec& hazard,
                       int n_steps) {
  p.validate();
  const double guard = 1e6 * std::max(p.phi, 1.0);
  const auto rhs = [&p, &hazard](double t, double c) {
    const double l = hazard.rate(t);
    const double m = 2.0 * c + p.eta;
    return l * c + p.gamma * p.sigma * p.sigma + p.phi * l -
           m * m / (4.0 * p.nu);
  };
  return rk4_backward(rhs, -p.phi, p.T, n_steps, guard);
}

Trajectory dp_trajectory_const_hazard(const ImpactParams& p, double lambda,
                                      std::span<const double> grid) {
  const auto mc = Model2Coefficients::from(p, lambda);
  check_grid(p, grid);

  const double den_T = mc.zeta_hat * std::exp(-2.0 * mc.alpha * p.T) + 1.0;
  if (std::abs(den_T) < 1e-12) {
    throw NumericalError("model2: trajectory blow-up (zeta*E = -1)");
  }

  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.inventory.resize(grid.size());
  out.rate.resize(grid.size());
  out.value_coeff.resize(grid.size());
  out.constrained = p.liquidity_dominance();

  const double decay = mc.alpha - 0.5 * lambda;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double E = std::exp(-2.0 * mc.alpha * (p.T - t));
    const double c = 0.5 / mc.xi_hat * (mc.zeta_hat * E - 1.0) /
                         (mc.zeta_hat * E + 1.0) +
                     0.5 * (lambda * p.nu - p.eta);
    const double x =
        p.Q * (mc.zeta_hat * E + 1.0) / den_T * std::exp(-decay * t);
    out.value_coeff[i] = c;
    out.inventory[i] = x;
    out.rate[i] = -(2.0 * c + p.eta) * x / (2.0 * p.nu);
  }
  out.terminal_inventory =
      p.Q * (mc.zeta_hat + 1.0) / den_T * std::exp(-decay * p.T);
  return out;
}

Trajectory dp_trajectory_from_table(const ImpactParams& p,
                                    const OdeTable& coeff,
                                    std::span<const double> grid) {
  p.validate();
  check_grid(p, grid);
  if (coeff.times.size() != coeff.values.size() || coeff.times.empty()) {
    throw std::invalid_argument("model2: malformed coefficient table");
  }

  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.inventory.resize(grid.size());
  out.rate.resize(grid.size());
  out.value_coeff.resize(grid.size());
  out.constrained = p.liquidity_dominance();

  // Feedback rate is g(t) X with g = -(2c+eta)/(2 nu), so
  // X(t) = Q exp(-int_0^t g); cumulative trapezoid over the output grid.
  double cum = 0.0;
  double prev_g = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = interp_linear(coeff.times, coeff.values, grid[i]);
    const double g = -(2.0 * c + p.eta) / (2.0 * p.nu);
    if (i > 0) cum += 0.5 * (g + prev_g) * (grid[i] - grid[i - 1]);
    prev_g = g;
    const double x = p.Q * std::exp(-cum);
    out.value_coeff[i] = c;
    out.inventory[i] = x;
    out.rate[i] = g * x;
  }
  out.terminal_inventory = out.inventory.back();
  return out;
}

}  // namespace liq
