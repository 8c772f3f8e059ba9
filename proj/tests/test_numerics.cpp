#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "liq/numerics.hpp"

using liq::NumericalError;
using liq::OdeTable;
using liq::TridiagonalSystem;

namespace {

// Dense Gaussian elimination with partial pivoting; oracle for the Thomas
// solver on small systems.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b, bool* singular) {
  const int n = static_cast<int>(b.size());
  *singular = false;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    }
    if (std::abs(a[pivot][k]) < 1e-9) {
      *singular = true;
      return {};
    }
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    for (int i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<std::vector<double>> to_dense(const TridiagonalSystem& sys) {
  const int n = static_cast<int>(sys.diag.size());
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = sys.diag[i];
    if (i > 0) a[i][i - 1] = sys.lower[i - 1];
    if (i + 1 < n) a[i][i + 1] = sys.upper[i];
  }
  return a;
}

double residual_inf(const TridiagonalSystem& sys, const std::vector<double>& x) {
  const int n = static_cast<int>(sys.diag.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double ax = sys.diag[i] * x[i];
    if (i > 0) ax += sys.lower[i - 1] * x[i - 1];
    if (i + 1 < n) ax += sys.upper[i] * x[i + 1];
    worst = std::max(worst, std::abs(ax - sys.rhs[i]));
  }
  return worst;
}

// Tiny deterministic generator for the fuzz loop; implementation-independent
// of the library RNG under test elsewhere.
struct Lcg {
  std::uint64_t s = 0x2545f4914f6cdd1dULL;
  int next(int m) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((s >> 33) % static_cast<std::uint64_t>(m));
  }
};

}  // namespace

TEST_CASE("tridiagonal identity returns rhs") {
  TridiagonalSystem sys;
  sys.diag = {1.0, 1.0, 1.0, 1.0};
  sys.lower = {0.0, 0.0, 0.0};
  sys.upper = {0.0, 0.0, 0.0};
  sys.rhs = {4.0, -1.0, 0.5, 2.0};
  auto x = liq::solve_tridiagonal(sys);
  for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(sys.rhs[i]).epsilon(1e-15));
}

TEST_CASE("tridiagonal 3x3 reference system") {
  TridiagonalSystem sys;
  sys.lower = {1.0, 1.0};
  sys.diag = {2.0, 2.0, 2.0};
  sys.upper = {1.0, 1.0};
  sys.rhs = {1.0, 2.0, 3.0};
  auto x = liq::solve_tridiagonal(sys);
  // Hand elimination: x = (0.5, 0, 1.5); residual must vanish.
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(residual_inf(sys, x) <= 1e-12);
}

TEST_CASE("tridiagonal diagonally dominant n=50 residual") {
  const int n = 50;
  TridiagonalSystem sys;
  sys.diag.assign(n, 4.0);
  sys.lower.assign(n - 1, -1.0);
  sys.upper.assign(n - 1, 1.0);
  sys.rhs.resize(n);
  for (int i = 0; i < n; ++i) sys.rhs[i] = std::sin(0.37 * i) + 0.2 * i;
  auto x = liq::solve_tridiagonal(sys);
  double rhs_scale = 0.0;
  for (double b : sys.rhs) rhs_scale = std::max(rhs_scale, std::abs(b));
  CHECK(residual_inf(sys, x) <= 1e-10 * rhs_scale);
}

TEST_CASE("tridiagonal zero pivot is rejected") {
  TridiagonalSystem sys;
  sys.diag = {0.0, 1.0};
  sys.lower = {1.0};
  sys.upper = {1.0};
  sys.rhs = {1.0, 1.0};
  CHECK_THROWS_AS(liq::solve_tridiagonal(sys), NumericalError);
}

TEST_CASE("tridiagonal matches dense solve on small fuzzed systems") {
  // Coefficients drawn from {-2..2}; systems the pivot guard rejects or
  // that are singular in the dense oracle are skipped.
  Lcg rng;
  int compared = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    int n = 1 + rng.next(8);
    TridiagonalSystem sys;
    sys.diag.resize(n);
    sys.rhs.resize(n);
    sys.lower.resize(n - 1);
    sys.upper.resize(n - 1);
    for (int i = 0; i < n; ++i) {
      sys.diag[i] = rng.next(5) - 2;
      sys.rhs[i] = rng.next(5) - 2;
    }
    for (int i = 0; i + 1 < n; ++i) {
      sys.lower[i] = rng.next(5) - 2;
      sys.upper[i] = rng.next(5) - 2;
    }
    bool singular = false;
    auto oracle = dense_solve(to_dense(sys), sys.rhs, &singular);
    if (singular) continue;
    std::vector<double> x;
    try {
      x = liq::solve_tridiagonal(sys);
    } catch (const NumericalError&) {
      continue;  // pivot guard; elimination without pivoting gave up
    }
    double scale = 1.0;
    for (double v : oracle) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < n; ++i) {
      REQUIRE(std::abs(x[i] - oracle[i]) <= 1e-7 * scale);
    }
    ++compared;
  }
  CHECK(compared > 1000);
}

TEST_CASE("rk4 zero rhs keeps the terminal value") {
  auto table = liq::rk4_backward([](double, double) { return 0.0; }, 3.5, 2.0, 16);
  REQUIRE(table.times.size() == 17);
  CHECK(table.times.front() == doctest::Approx(0.0));
  CHECK(table.times.back() == doctest::Approx(2.0));
  for (double v : table.values) CHECK(v == 3.5);
}

TEST_CASE("rk4 constant rhs is exact") {
  auto table = liq::rk4_backward([](double, double) { return 1.0; }, 2.0, 1.5, 10);
  CHECK(table.values.front() == doctest::Approx(2.0 - 1.5).epsilon(1e-14));
}

TEST_CASE("rk4 exponential accuracy") {
  // y' = -y, y(1) = 1 integrated backward: y(0) = e.
  auto table = liq::rk4_backward([](double, double y) { return -y; }, 1.0, 1.0, 1000);
  CHECK(std::abs(table.values.front() - std::exp(1.0)) / std::exp(1.0) <= 1e-10);
}

TEST_CASE("rk4 order on the logistic equation") {
  auto rhs = [](double, double y) { return y * (1.0 - y); };
  const double exact0 = 1.0 / (1.0 + std::exp(1.0));  // y(1) = 1/2 backward
  double e20 = std::abs(liq::rk4_backward(rhs, 0.5, 1.0, 20).values.front() - exact0);
  double e40 = std::abs(liq::rk4_backward(rhs, 0.5, 1.0, 40).values.front() - exact0);
  double order = std::log2(e20 / e40);
  CHECK(order >= 3.7);
  CHECK(order < 4.3);
}

TEST_CASE("rk4 blow-up guard aborts") {
  // y' = -y^2 backward from y(1) = 2 blows up at t = 1/2.
  auto rhs = [](double, double y) { return -y * y; };
  CHECK_THROWS_AS(liq::rk4_backward(rhs, 2.0, 1.0, 1000, 1e6), NumericalError);
}

TEST_CASE("trapezoid basics") {
  auto grid = liq::uniform_grid(0.0, 1.0, 101);
  std::vector<double> ones(grid.size(), 1.0);
  CHECK(liq::trapezoid(ones, grid) == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<double> linear(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) linear[i] = grid[i];
  CHECK(liq::trapezoid(linear, grid) == doctest::Approx(0.5).epsilon(1e-14));

  auto fine = liq::uniform_grid(0.0, 1.0, 1000);
  std::vector<double> quad(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) quad[i] = fine[i] * fine[i];
  CHECK(std::abs(liq::trapezoid(quad, fine) - 1.0 / 3.0) <= 1e-6);
}

TEST_CASE("linear interpolation clamps at the ends") {
  std::vector<double> xs{0.0, 1.0, 2.0};
  std::vector<double> ys{1.0, 3.0, 2.0};
  CHECK(liq::interp_linear(xs, ys, 0.5) == doctest::Approx(2.0));
  CHECK(liq::interp_linear(xs, ys, 1.25) == doctest::Approx(2.75));
  CHECK(liq::interp_linear(xs, ys, -5.0) == doctest::Approx(1.0));
  CHECK(liq::interp_linear(xs, ys, 9.0) == doctest::Approx(2.0));
}

TEST_CASE("uniform grid endpoints are exact") {
  auto grid = liq::uniform_grid(0.0, 0.7, 8);
  REQUIRE(grid.size() == 8);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 0.7);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}
