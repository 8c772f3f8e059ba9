#include "liq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace liq {

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  const std::size_t n = sys.diag.size();
  if (n == 0) throw std::invalid_argument("tridiagonal: empty system");
  if (sys.lower.size() + 1 != n || sys.upper.size() + 1 != n ||
      sys.rhs.size() != n) {
    throw std::invalid_argument("tridiagonal: band sizes must be n-1, rhs n");
  }

  double scale = 0.0;
  for (double d : sys.diag) scale = std::max(scale, std::abs(d));
  const double pivot_floor = 1e-14 * scale;

  // Forward sweep without pivoting; our discretizations are diagonally
  // dominant, the floor catches everything else.
  std::vector<double> c(n, 0.0), d(n, 0.0);
  double pivot = sys.diag[0];
  if (std::abs(pivot) <= pivot_floor) {
    throw NumericalError("tridiagonal: near-zero pivot at row 0");
  }
  if (n > 1) c[0] = sys.upper[0] / pivot;
  d[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
    if (std::abs(pivot) <= pivot_floor) {
      throw NumericalError("tridiagonal: near-zero pivot at row " +
                           std::to_string(i));
    }
    if (i + 1 < n) c[i] = sys.upper[i] / pivot;
    d[i] = (sys.rhs[i] - sys.lower[i - 1] * d[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

OdeTable rk4_backward(const std::function<double(double, double)>& rhs,
                      double terminal_value, double horizon, int n_steps,
                      double blow_up_abort) {
  if (n_steps < 1) throw std::invalid_argument("rk4_backward: n_steps < 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("rk4_backward: horizon <= 0");

  const double h = horizon / n_steps;
  OdeTable table;
  table.times.resize(n_steps + 1);
  table.values.resize(n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) table.times[i] = horizon * i / n_steps;

  double y = terminal_value;
  table.values[n_steps] = y;
  for (int i = n_steps; i-- > 0;) {
    const double t = table.times[i + 1];  // stepping from t down to t - h
    const double k1 = rhs(t, y);
    const double k2 = rhs(t - 0.5 * h, y - 0.5 * h * k1);
    const double k3 = rhs(t - 0.5 * h, y - 0.5 * h * k2);
    const double k4 = rhs(t - h, y - h * k3);
    y -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y) ||
        (blow_up_abort > 0.0 && std::abs(y) > blow_up_abort)) {
      throw NumericalError("rk4_backward: solution blow-up at t = " +
                           std::to_string(table.times[i]));
    }
    table.values[i] = y;
  }
  return table;
}

double trapezoid(std::span<const double> values, std::span<const double> times) {
  if (values.size() != times.size()) {
    throw std::invalid_argument("trapezoid: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    acc += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  }
  return acc;
}

double interp_linear(std::span<const double> xs, std::span<const double> ys,
                     double x) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("interp_linear: bad table");
  }
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

std::vector<double> uniform_grid(double t0, double t1, int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("uniform_grid: n_nodes < 2");
  std::vector<double> g(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    g[i] = t0 + (t1 - t0) * i / (n_nodes - 1);
  }
  return g;
}

}  // namespace liq
