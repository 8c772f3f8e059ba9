#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "liq/market_model.hpp"
#include "liq/model3.hpp"
#include "liq/trajectory.hpp"

namespace liq {

// xoshiro256++ with splitmix64 seeding. Hand-rolled because the standard
// distributions are not bit-portable across library implementations and
// every estimate here must reproduce byte-identically from its seed.
// Bodies live in the header: the hitting-time estimator burns ~2e9 draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = split(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on (0, 1] (never 0, so log() is safe) and on [0, 1).
  double uniform_pos() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are consumed together and the
  // sine partner is cached for the next call.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double angle = 6.283185307179586476925286766559 * uniform();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t split(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;

  friend std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);
};

// Deterministic derivation of per-path seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

// One correlated draw of the price and firm-value paths on a uniform grid.
// S_path holds only the unimpacted part s0 + sigma * W; the permanent-impact
// drift depends on the strategy and is added during replay. Y_path uses
// exact log-normal increments. dW_Y = rho * dW_S + sqrt(1-rho^2) * dZ.
struct PathSample {
  std::uint64_t seed = 0;
  std::vector<double> times;  // n_steps + 1 nodes
  std::vector<double> dW_S;   // n_steps increments, per-step variance dt
  std::vector<double> dW_Y;
  std::vector<double> S_path;
  std::vector<double> Y_path;
};

PathSample generate_paths(const ImpactParams& p, const FirmValueParams& fv,
                          std::uint64_t seed, int n_steps);

// Mark-to-market accounting of one replayed strategy.
struct PnLRecord {
  double cash = 0.0;              // final proceeds
  double book_value = 0.0;        // final cash + inventory * price
  double realized_gain = 0.0;     // three-term gain minus terminal penalty
  double quad_variation = 0.0;    // sum of sigma^2 X^2 dt, >= 0
  double terminal_penalty = 0.0;  // phi * X^2 at termination
  double objective = 0.0;         // realized_gain - gamma * quad_variation
  Termination termination;
  bool clamped = false;  // inventory clamp activated at some step
};

// Trade rate as a function of (time, inventory). Must be nonnegative.
using RateRule = std::function<double(double, double)>;

struct ReplayResult {
  PnLRecord pnl;
  SimTrajectory trajectory;
};

// Euler replay of a rate rule along a sampled path: accumulates the
// realized gain (spread cost + impact drift + noise terms), the quadratic
// variation, and the cash/book ledgers; applies the terminal penalty to
// the inventory left at termination. The executed rate is capped at
// inventory/dt (budget enforcement, total sold <= Q) and the cap sets the
// clamp flag. A negative rate from the rule throws std::invalid_argument.
// stop_time < T truncates the replay at the first grid node >= stop_time
// (exogenous termination: trading stops, the penalty applies there and
// the record carries stop_kind); stop_time >= T leaves the horizon case.
ReplayResult replay_strategy(const PathSample& paths, const RateRule& rule,
                             const ImpactParams& p,
                             double stop_time = std::numeric_limits<double>::infinity(),
                             TerminationKind stop_kind = TerminationKind::hazard);

struct McEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long n_paths = 0;
};

// Monte Carlo estimate of E[e^{-u * tau}] for the first passage tau of a
// drifted Brownian walk to fv.log_distance(fv.y0), monitored on a grid of
// n_steps steps spanning [0, 50/u]; paths alive at the cap contribute 0.
// Discrete monitoring overshoots the crossing, biasing the estimate low.
McEstimate estimate_hitting_transform(const FirmValueParams& fv, double u,
                                      long n_paths, long n_steps,
                                      std::uint64_t seed);

}  // namespace liq
