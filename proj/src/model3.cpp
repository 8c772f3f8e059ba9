#include "liq/model3.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "liq/model1.hpp"
#include "liq/numerics.hpp"
#include "liq/sim_engine.hpp"

namespace liq {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("firm params: ") + field + " " +
                                what);
  }
}

}  // namespace

void FirmValueParams::validate() const {
  require(std::isfinite(beta), "beta", "must be finite");
  require(std::isfinite(xi) && xi >= 0.0, "xi", "must be finite and >= 0");
  require(std::isfinite(rho) && std::abs(rho) <= 1.0, "rho",
          "must lie in [-1, 1]");
  require(std::isfinite(y0) && y0 > 0.0, "y0", "must be finite and > 0");
  require(std::isfinite(barrier) && barrier > 0.0, "barrier",
          "must be finite and > 0");
  require(y0 >= barrier, "y0", "must start at or above the barrier");
}

double FirmValueParams::log_distance(double y) const {
  if (!(xi > 0.0)) {
    throw std::invalid_argument("firm params: log distance needs xi > 0");
  }
  if (y < barrier) {
    throw std::domain_error("firm params: y below barrier (defaulted)");
  }
  return std::log(y / barrier) / xi;
}

double FirmValueParams::hitting_drift() const {
  if (!(xi > 0.0)) {
    throw std::invalid_argument("firm params: hitting drift needs xi > 0");
  }
  return (0.5 * xi * xi - beta) / xi;
}

double hitting_time_laplace(double drift, double distance, double u) {
  if (!(distance >= 0.0)) {
    throw std::invalid_argument("hitting transform: distance must be >= 0");
  }
  if (!(u > 0.0)) {
    throw std::invalid_argument("hitting transform: u must be > 0");
  }
  return std::exp(drift * distance -
                  distance * std::sqrt(2.0 * u + drift * drift));
}

SolverGrid SolverGrid::make(double horizon, const FirmValueParams& fv,
                            int n_time, int n_space, double x_max) {
  fv.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon <= 0");
  if (n_time < 1) throw std::invalid_argument("grid: n_time < 1");
  if (n_space < 2) throw std::invalid_argument("grid: n_space < 2");
  if (!(x_max > 0.0)) throw std::invalid_argument("grid: x_max <= 0");

  SolverGrid g;
  g.n_time = n_time;
  g.n_space = n_space;
  g.x_max = x_max;
  g.horizon = horizon;
  g.dt = horizon / n_time;
  g.dx = x_max / n_space;
  const double drift = fv.beta - 0.5 * fv.xi * fv.xi;
  g.r = g.dt * fv.xi * fv.xi / (g.dx * g.dx);
  g.u = 0.5 * g.r + g.dt * drift / (2.0 * g.dx);
  g.v = 0.5 * g.r - g.dt * drift / (2.0 * g.dx);
  g.stability_ok = g.r <= 1.0 && g.u >= 0.0 && g.v >= 0.0;
  return g;
}

SolverGrid SolverGrid::stable_default(double horizon,
                                      const FirmValueParams& fv, int n_time,
                                      double x_max) {
  fv.validate();
  if (n_time < 1) throw std::invalid_argument("grid: n_time < 1");
  const double dt = horizon / n_time;

  int m;
  if (fv.xi > 0.0) {
    m = static_cast<int>(std::floor(x_max * std::sqrt(0.9 / dt) / fv.xi));
  } else {
    m = 100;  // degenerate diffusion: nodes decouple, resolution is free
  }
  while (m >= 2) {
    SolverGrid g = make(horizon, fv, n_time, m, x_max);
    if (g.r <= 0.9 && g.u >= 0.0 && g.v >= 0.0) return g;
    if (g.u < 0.0 || g.v < 0.0) break;  // needs finer dx than r <= 0.9 allows
    --m;
  }
  throw NumericalError("model3: no stable default grid for these dynamics");
}

ValueSurface solve_value_surface(const ImpactParams& p,
                                 const FirmValueParams& fv,
                                 const SolverGrid& grid, bool force) {
  p.validate();
  fv.validate();
  if (!(p.sigma > 0.0)) {
    throw std::invalid_argument(
        "model3: sigma must be > 0 (far-field boundary needs the "
        "fixed-horizon coefficient)");
  }
  if (grid.n_time < 1 || grid.n_space < 2 || !(grid.dt > 0.0) ||
      !(grid.dx > 0.0)) {
    throw std::invalid_argument("model3: malformed solver grid");
  }
  if (!grid.stability_ok && !force) {
    throw NumericalError(
        "model3: unstable grid (r = " + std::to_string(grid.r) +
        ", u = " + std::to_string(grid.u) + ", v = " + std::to_string(grid.v) +
        "); refine or force");
  }

  const int N = grid.n_time;
  const int M = grid.n_space;
  const double barrier_value = -2.0 * p.phi + p.eta;

  // Far-field column is pinned to the fixed-horizon coefficient; the
  // tau = 0 corner keeps the initial condition (the two agree to rounding).
  std::vector<double> far_field(N + 1);
  far_field[0] = barrier_value;
  for (int i = 1; i <= N; ++i) {
    far_field[i] = 2.0 * dp_coefficient(p, p.T - grid.tau(i)) + p.eta;
  }

  ValueSurface vs;
  vs.grid = grid;
  vs.impact = p;
  vs.firm = fv;
  vs.values.assign(N + 1, std::vector<double>(M + 1, barrier_value));

  const double quad_scale = grid.dt / (2.0 * p.nu);
  const double source = 2.0 * grid.dt * p.gamma * p.sigma * p.sigma;
  for (int i = 0; i < N; ++i) {
    const std::vector<double>& cur = vs.values[i];
    std::vector<double>& next = vs.values[i + 1];
    for (int j = 1; j < M; ++j) {
      // One Picard iteration on the quadratic term: the new value solves
      // (1 - dt h/(2 nu)) h_next = explicit stencil - source.
      const double stencil = grid.v * cur[j - 1] + (1.0 - grid.r) * cur[j] +
                             grid.u * cur[j + 1] - source;
      const double pivot = 1.0 - quad_scale * cur[j];
      if (std::abs(pivot) < 1e-12) {
        throw NumericalError("model3: Picard pivot vanished at step " +
                             std::to_string(i + 1));
      }
      const double val = stencil / pivot;
      if (!std::isfinite(val)) {
        throw NumericalError("model3: surface overflow at step " +
                             std::to_string(i + 1));
      }
      next[j] = val;
    }
    next[0] = barrier_value;
    next[M] = far_field[i + 1];
  }
  return vs;
}

double strategy_at(const ValueSurface& vs, double t, double y, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("model3: inventory must be >= 0");
  }
  if (y < vs.firm.barrier) {
    throw std::domain_error("model3: firm value below barrier (defaulted)");
  }
  const SolverGrid& g = vs.grid;
  const double x = vs.firm.log_distance(y);

  // Nearest nodes; ties resolve toward the barrier and toward earlier
  // calendar time (larger tau).
  int j = static_cast<int>(std::ceil(x / g.dx - 0.5));
  j = std::max(0, std::min(g.n_space, j));
  const double tau = g.horizon - t;
  int i = static_cast<int>(std::floor(tau / g.dt + 0.5));
  i = std::max(0, std::min(g.n_time, i));

  const double rate = -vs.values[i][j] * q / (2.0 * vs.impact.nu);
  return std::max(rate, 0.0);
}

LiquidationPath simulate_liquidation(const ValueSurface& vs,
                                     std::uint64_t seed) {
  const ImpactParams& p = vs.impact;
  const FirmValueParams& fv = vs.firm;
  if (!(fv.xi > 0.0)) {
    throw std::invalid_argument("model3: simulation needs xi > 0");
  }

  const int N = vs.grid.n_time;
  const double dt = vs.grid.dt;
  const double sqrt_dt = std::sqrt(dt);
  const double log_drift = (fv.beta - 0.5 * fv.xi * fv.xi) * dt;
  const double rho_c = std::sqrt(1.0 - fv.rho * fv.rho);

  Rng rng(seed);

  LiquidationPath out;
  out.times.reserve(N + 1);
  out.log_firm.reserve(N + 1);
  out.inventory.reserve(N + 1);
  out.rate.reserve(N + 1);
  out.book_value.reserve(N + 1);

  double log_y = std::log(fv.y0);
  double inventory = p.Q;
  double cash = 0.0;
  double impact_drift = 0.0;  // accumulated permanent impact on the mid
  double w_s = 0.0;           // price Brownian level
  double gain = 0.0;
  double qv = 0.0;

  Termination term{TerminationKind::horizon, p.T};
  bool terminated = false;

  for (int i = 0; i <= N; ++i) {
    const double t = vs.grid.horizon * i / N;
    const double y = std::exp(log_y);
    const double mid = p.s0 + p.sigma * w_s + impact_drift;

    if (y <= fv.barrier) {
      term = {TerminationKind::barrier, t};
      terminated = true;
      out.times.push_back(t);
      out.log_firm.push_back(log_y);
      out.inventory.push_back(inventory);
      out.rate.push_back(0.0);  // no trading once defaulted
      out.book_value.push_back(cash + inventory * mid);
      break;
    }

    double rate = strategy_at(vs, t, y, inventory);
    if (i < N && rate * dt > inventory) {
      rate = inventory / dt;  // budget cap: cannot sell more than held
      out.clamped = true;
    }
    out.times.push_back(t);
    out.log_firm.push_back(log_y);
    out.inventory.push_back(inventory);
    out.rate.push_back(rate);
    out.book_value.push_back(cash + inventory * mid);

    if (i == N) break;

    const double z_s = rng.normal();
    const double z_y = fv.rho * z_s + rho_c * rng.normal();
    const double dw_s = sqrt_dt * z_s;

    gain += p.temporary_impact(rate) * rate * dt +
            inventory * p.permanent_impact(rate) * dt +
            p.sigma * inventory * dw_s;
    qv += p.sigma * p.sigma * inventory * inventory * dt;
    cash += (mid + p.temporary_impact(rate)) * rate * dt;
    impact_drift += p.permanent_impact(rate) * dt;
    inventory = std::max(0.0, inventory - rate * dt);
    w_s += dw_s;
    log_y += log_drift + fv.xi * sqrt_dt * z_y;
  }

  if (!terminated) term = {TerminationKind::horizon, p.T};

  out.termination = term;
  out.terminal_penalty = p.phi * inventory * inventory;
  out.realized_gain = gain - out.terminal_penalty;
  out.quad_variation = qv;
  out.objective = out.realized_gain - p.gamma * qv;
  return out;
}

}  // namespace liq
