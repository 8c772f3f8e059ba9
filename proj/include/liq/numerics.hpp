#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace liq {

// Thrown when a solver leaves its domain of validity: near-singular pivot,
// coefficient blow-up, unstable grid without an explicit override.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tridiagonal system with n unknowns; lower and upper hold n-1 entries.
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> rhs;
};

// Thomas elimination, O(n). Throws NumericalError when an eliminated pivot
// falls below 1e-14 * max|diag|.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

// Samples of a scalar function on an ascending time grid.
struct OdeTable {
  std::vector<double> times;
  std::vector<double> values;
};

// Classic fourth-order Runge-Kutta integrating y' = rhs(t, y) backward from
// y(horizon) = terminal_value to t = 0. Result is in ascending time order,
// n_steps + 1 nodes. blow_up_abort > 0 aborts once |y| exceeds it.
OdeTable rk4_backward(const std::function<double(double, double)>& rhs,
                      double terminal_value, double horizon, int n_steps,
                      double blow_up_abort = 0.0);

double trapezoid(std::span<const double> values, std::span<const double> times);

// Piecewise-linear interpolation; clamps to the end values outside the grid.
double interp_linear(std::span<const double> xs, std::span<const double> ys,
                     double x);

std::vector<double> uniform_grid(double t0, double t1, int n_nodes);

}  // namespace liq
