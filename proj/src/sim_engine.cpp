#include "liq/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liq {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over a golden-ratio spaced stream index: distinct streams
  // land in well-separated states regardless of the base seed.
  std::uint64_t state = base ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  return Rng::split(state);
}

PathSample generate_paths(const ImpactParams& p, const FirmValueParams& fv,
                          std::uint64_t seed, int n_steps) {
  p.validate();
  fv.validate();
  if (n_steps < 1) throw std::invalid_argument("paths: n_steps < 1");

  const double dt = p.T / n_steps;
  const double sqrt_dt = std::sqrt(dt);
  const double rho_c = std::sqrt(1.0 - fv.rho * fv.rho);
  const double log_drift = (fv.beta - 0.5 * fv.xi * fv.xi) * dt;

  PathSample s;
  s.seed = seed;
  s.times.resize(n_steps + 1);
  s.dW_S.resize(n_steps);
  s.dW_Y.resize(n_steps);
  s.S_path.resize(n_steps + 1);
  s.Y_path.resize(n_steps + 1);

  Rng rng(seed);
  double w_s = 0.0;
  double log_y = std::log(fv.y0);
  s.times[0] = 0.0;
  s.S_path[0] = p.s0;
  s.Y_path[0] = fv.y0;
  for (int i = 0; i < n_steps; ++i) {
    const double z_s = rng.normal();
    const double z_y = fv.rho * z_s + rho_c * rng.normal();
    s.dW_S[i] = sqrt_dt * z_s;
    s.dW_Y[i] = sqrt_dt * z_y;
    w_s += s.dW_S[i];
    log_y += log_drift + fv.xi * s.dW_Y[i];
    s.times[i + 1] = p.T * (i + 1) / n_steps;
    s.S_path[i + 1] = p.s0 + p.sigma * w_s;
    s.Y_path[i + 1] = std::exp(log_y);
  }
  return s;
}

ReplayResult replay_strategy(const PathSample& paths, const RateRule& rule,
                             const ImpactParams& p, double stop_time,
                             TerminationKind stop_kind) {
  p.validate();
  const std::size_t n_nodes = paths.times.size();
  if (n_nodes < 2 || paths.dW_S.size() + 1 != n_nodes ||
      paths.S_path.size() != n_nodes) {
    throw std::invalid_argument("replay: malformed path sample");
  }
  const std::size_t n = n_nodes - 1;
  const bool may_stop = stop_time < p.T;

  ReplayResult out;
  SimTrajectory& traj = out.trajectory;
  traj.times = paths.times;
  traj.inventory.resize(n_nodes);
  traj.rate.resize(n_nodes);
  traj.price.resize(n_nodes);
  traj.cash.resize(n_nodes);
  traj.book_value.resize(n_nodes);

  double inventory = p.Q;
  double cash = 0.0;
  double impact_drift = 0.0;
  double gain = 0.0;
  double qv = 0.0;
  bool clamped = false;
  Termination term{TerminationKind::horizon, p.T};
  std::size_t last = n;

  for (std::size_t i = 0; i <= n; ++i) {
    const double t = paths.times[i];
    const double mid = paths.S_path[i] + impact_drift;

    if (may_stop && t >= stop_time) {
      // Exogenous termination: trading stops at this node.
      term = {stop_kind, t};
      last = i;
      traj.inventory[i] = inventory;
      traj.rate[i] = 0.0;
      traj.price[i] = mid;
      traj.cash[i] = cash;
      traj.book_value[i] = cash + inventory * mid;
      break;
    }

    double rate = rule(t, inventory);
    if (!(rate >= 0.0)) {
      throw std::invalid_argument("replay: strategy produced a negative rate");
    }

    if (i == n) {
      // Horizon node: the rate is recorded but no longer applied.
      traj.inventory[i] = inventory;
      traj.rate[i] = rate;
      traj.price[i] = mid;
      traj.cash[i] = cash;
      traj.book_value[i] = cash + inventory * mid;
      break;
    }

    const double dt = paths.times[i + 1] - paths.times[i];
    if (rate * dt > inventory) {
      // Budget enforcement: selling is capped by what is held.
      rate = inventory / dt;
      clamped = true;
    }

    traj.inventory[i] = inventory;
    traj.rate[i] = rate;
    traj.price[i] = mid;
    traj.cash[i] = cash;
    traj.book_value[i] = cash + inventory * mid;

    gain += p.temporary_impact(rate) * rate * dt +
            inventory * p.permanent_impact(rate) * dt +
            p.sigma * inventory * paths.dW_S[i];
    qv += p.sigma * p.sigma * inventory * inventory * dt;
    cash += (mid + p.temporary_impact(rate)) * rate * dt;
    impact_drift += p.permanent_impact(rate) * dt;
    inventory = std::max(0.0, inventory - rate * dt);
  }

  if (last < n) {
    // Drop the unwritten tail after an exogenous stop.
    traj.times.resize(last + 1);
    traj.inventory.resize(last + 1);
    traj.rate.resize(last + 1);
    traj.price.resize(last + 1);
    traj.cash.resize(last + 1);
    traj.book_value.resize(last + 1);
  }

  PnLRecord& pnl = out.pnl;
  pnl.cash = cash;
  pnl.book_value = traj.book_value.back();
  pnl.terminal_penalty = p.phi * inventory * inventory;
  pnl.realized_gain = gain - pnl.terminal_penalty;
  pnl.quad_variation = qv;
  pnl.objective = pnl.realized_gain - p.gamma * qv;
  pnl.termination = term;
  pnl.clamped = clamped;
  return out;
}

McEstimate estimate_hitting_transform(const FirmValueParams& fv, double u,
                                      long n_paths, long n_steps,
                                      std::uint64_t seed) {
  if (!(u > 0.0)) throw std::invalid_argument("hitting mc: u must be > 0");
  if (n_paths < 1 || n_steps < 1) {
    throw std::invalid_argument("hitting mc: counts must be positive");
  }
  const double m = fv.log_distance(fv.y0);
  const double drift = fv.hitting_drift();

  if (m == 0.0) return {1.0, 0.0, n_paths};  // already at the barrier

  // Paths are censored at 50/u time units; survivors contribute zero,
  // which undershoots the transform by less than e^{-50}.
  const double dt = 50.0 / u / n_steps;
  const double sqrt_dt = std::sqrt(dt);
  const double drift_dt = drift * dt;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (long path = 0; path < n_paths; ++path) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(path)));
    double w = 0.0;
    double value = 0.0;
    for (long k = 1; k <= n_steps; ++k) {
      w += drift_dt + sqrt_dt * rng.normal();
      if (w >= m) {
        value = std::exp(-u * (dt * k));
        break;
      }
    }
    sum += value;
    sum_sq += value * value;
  }

  McEstimate est;
  est.n_paths = n_paths;
  est.mean = sum / n_paths;
  const double var =
      std::max(0.0, (sum_sq - sum * sum / n_paths) / (n_paths - 1.0));
  est.stderr_of_mean = n_paths > 1 ? std::sqrt(var / n_paths) : 0.0;
  return est;
}

}  // namespace liq
