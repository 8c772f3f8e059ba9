#pragma once

#include <vector>

namespace liq {

// Deterministic liquidation schedule sampled on a time grid. value_coeff
// holds the quadratic value coefficient where the producing model defines
// one (empty otherwise). terminal_inventory is the left limit at the
// horizon; zero for hands-clean schedules.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> inventory;
  std::vector<double> rate;
  std::vector<double> value_coeff;
  double terminal_inventory = 0.0;
  bool constrained = true;  // rate >= 0 certified by liquidity dominance
};

enum class TerminationKind { horizon, hazard, barrier };

const char* to_string(TerminationKind kind);

struct Termination {
  TerminationKind kind = TerminationKind::horizon;
  double time = 0.0;
};

// One realized execution path with its accounting states. price is the
// impacted mid; book_value = cash + inventory * price at every node.
struct SimTrajectory {
  std::vector<double> times;
  std::vector<double> inventory;
  std::vector<double> rate;
  std::vector<double> price;
  std::vector<double> cash;
  std::vector<double> book_value;
};

}  // namespace liq
