// liqtool: computes liquidation schedules under three horizon regimes,
// simulates realized P&L, and runs the numerical validation suite.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
// failure (instability or blow-up).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liq/config.hpp"
#include "liq/market_model.hpp"
#include "liq/model1.hpp"
#include "liq/model2.hpp"
#include "liq/model3.hpp"
#include "liq/numerics.hpp"
#include "liq/sim_engine.hpp"
#include "liq/trajectory.hpp"
#include "liq/validation.hpp"

namespace {

using nlohmann::json;

constexpr int kGridNodes = 1001;   // schedule grids: 1001 nodes over [0, T]
constexpr int kSimSteps = 1000;    // per-path time steps in `simulate`
constexpr std::uint64_t kQuantileStream = 0xa5a5a5a5a5a5a5a5ULL;

struct ImpactFlags {
  double eta = 0.0, nu = 0.0, gamma = 0.0, sigma = 0.0;
  double phi = 0.0, T = 0.0, Q = 0.0, s0 = 0.0;
  CLI::Option* opt_eta = nullptr;
  CLI::Option* opt_nu = nullptr;
  CLI::Option* opt_gamma = nullptr;
  CLI::Option* opt_sigma = nullptr;
  CLI::Option* opt_phi = nullptr;
  CLI::Option* opt_T = nullptr;
  CLI::Option* opt_Q = nullptr;
  CLI::Option* opt_s0 = nullptr;
};

void add_impact_flags(CLI::App& app, ImpactFlags& f) {
  f.opt_eta = app.add_option("--eta", f.eta, "permanent impact slope");
  f.opt_nu = app.add_option("--nu", f.nu, "temporary impact slope");
  f.opt_gamma = app.add_option("--gamma", f.gamma, "risk aversion");
  f.opt_sigma = app.add_option("--sigma", f.sigma, "price volatility");
  f.opt_phi = app.add_option("--phi", f.phi, "terminal penalty");
  f.opt_T = app.add_option("--T", f.T, "horizon");
  f.opt_Q = app.add_option("--Q", f.Q, "initial inventory");
  f.opt_s0 = app.add_option("--s0", f.s0, "initial mid price");
}

liq::ImpactParams resolve_params(const std::string& config_path,
                                 const ImpactFlags& f) {
  liq::ImpactParams p;
  if (!config_path.empty()) liq::apply_config_file(p, config_path);
  if (f.opt_eta->count() > 0) p.eta = f.eta;
  if (f.opt_nu->count() > 0) p.nu = f.nu;
  if (f.opt_gamma->count() > 0) p.gamma = f.gamma;
  if (f.opt_sigma->count() > 0) p.sigma = f.sigma;
  if (f.opt_phi->count() > 0) p.phi = f.phi;
  if (f.opt_T->count() > 0) p.T = f.T;
  if (f.opt_Q->count() > 0) p.Q = f.Q;
  if (f.opt_s0->count() > 0) p.s0 = f.s0;
  p.validate();
  return p;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write '" + path.string() + "'");
  }
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  std::cout << "wrote " << path.string() << "\n";
}

void csv_row(std::ofstream& out, const std::vector<double>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ",";
    out << liq::format_sig(cells[i]);
  }
  out << "\n";
}

// ----- model1 ---------------------------------------------------------

int run_model1(const liq::ImpactParams& p, const std::string& out_dir) {
  auto grid = liq::uniform_grid(0.0, p.T, kGridNodes);
  liq::Trajectory det = liq::det_solution(p, grid);
  liq::Trajectory dp = liq::dp_trajectory(p, grid);

  std::filesystem::path dir(out_dir);
  auto csv = open_out(dir / "model1.csv");
  csv << "t,X_det,theta_det,X_dp,theta_dp,c\n";
  double sup_theta = 0.0, sup_x = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double c = liq::dp_coefficient(p, grid[i]);
    csv_row(csv, {grid[i], det.inventory[i], det.rate[i], dp.inventory[i],
                  dp.rate[i], c});
    sup_theta = std::max(sup_theta, std::abs(dp.rate[i] - det.rate[i]));
    sup_x = std::max(sup_x, std::abs(dp.inventory[i] - det.inventory[i]));
  }
  std::cout << "wrote " << (dir / "model1.csv").string() << "\n";

  json summary;
  summary["terminal_inventory"] = liq::dp_terminal_inventory(p);
  summary["sup_gap_theta"] = sup_theta;
  summary["sup_gap_X"] = sup_x;
  summary["condition13"] = p.liquidity_dominance();
  write_json(dir / "model1_summary.json", summary);
  return 0;
}

// ----- model2 ---------------------------------------------------------

int run_model2(const liq::ImpactParams& p, const std::string& out_dir,
               bool has_lambda, double lambda, const std::string& hazard_file) {
  auto grid = liq::uniform_grid(0.0, p.T, kGridNodes);
  liq::Trajectory det, dp;
  std::vector<double> coeff(grid.size());
  std::vector<double> survival(grid.size());
  liq::HazardSpec hazard = liq::HazardSpec::constant(0.0);

  if (!hazard_file.empty()) {
    hazard = liq::load_hazard_table(hazard_file);
    liq::OdeTable table = liq::riccati_solve(p, hazard, kGridNodes - 1);
    det = liq::det_bvp_solve(p, hazard, kGridNodes);
    dp = liq::dp_trajectory_from_table(p, table, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      coeff[i] = liq::interp_linear(table.times, table.values, grid[i]);
      survival[i] = liq::survival_probability(hazard, grid[i]);
    }
  } else {
    hazard = liq::HazardSpec::constant(lambda);
    det = liq::det_solution_const_hazard(p, lambda, grid);
    dp = liq::dp_trajectory_const_hazard(p, lambda, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      coeff[i] = liq::dp_coefficient_const_hazard(p, lambda, grid[i]);
      survival[i] = liq::survival_probability(hazard, grid[i]);
    }
  }

  std::filesystem::path dir(out_dir);
  auto csv = open_out(dir / "model2.csv");
  csv << "t,X_det,theta_det,X_dp,theta_dp,c_tilde,survival\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv_row(csv, {grid[i], det.inventory[i], det.rate[i], dp.inventory[i],
                  dp.rate[i], coeff[i], survival[i]});
  }
  std::cout << "wrote " << (dir / "model2.csv").string() << "\n";

  json summary;
  summary["terminal_inventory"] = dp.terminal_inventory;
  summary["prob_full_horizon"] = liq::survival_probability(hazard, p.T);
  summary["condition13"] = p.liquidity_dominance();
  summary["lambda"] = has_lambda ? json(lambda) : json(nullptr);
  summary["hazard_file"] = hazard_file.empty() ? json(nullptr) : json(hazard_file);
  write_json(dir / "model2_summary.json", summary);
  return 0;
}

// ----- model3 ---------------------------------------------------------

int run_model3(const liq::ImpactParams& p, const std::string& out_dir,
               const liq::FirmValueParams& fv, double x_max, int n_space,
               int n_time, bool force, std::uint64_t seed) {
  liq::SolverGrid grid =
      n_space > 0 ? liq::SolverGrid::make(p.T, fv, n_time, n_space, x_max)
                  : liq::SolverGrid::stable_default(p.T, fv, n_time, x_max);
  liq::ValueSurface vs = liq::solve_value_surface(p, fv, grid, force);
  liq::LiquidationPath path = liq::simulate_liquidation(vs, seed);

  std::filesystem::path dir(out_dir);
  auto surface = open_out(dir / "model3_surface.csv");
  surface << "tau,x,h_tilde\n";
  for (int i = 0; i <= grid.n_time; ++i) {
    for (int j = 0; j <= grid.n_space; ++j) {
      csv_row(surface, {grid.tau(i), grid.x(j), vs.values[i][j]});
    }
  }
  std::cout << "wrote " << (dir / "model3_surface.csv").string() << "\n";

  auto traj = open_out(dir / "model3_path.csv");
  traj << "t,logY,X,theta,V\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    csv_row(traj, {path.times[i], path.log_firm[i], path.inventory[i],
                   path.rate[i], path.book_value[i]});
  }
  std::cout << "wrote " << (dir / "model3_path.csv").string() << "\n";

  json summary;
  summary["termination_kind"] = liq::to_string(path.termination.kind);
  summary["termination_time"] = path.termination.time;
  summary["realized_pnl"] = path.realized_gain;
  summary["stability_ok"] = grid.stability_ok;
  summary["r"] = grid.r;
  summary["u"] = grid.u;
  summary["v"] = grid.v;
  write_json(dir / "model3_summary.json", summary);
  return 0;
}

// ----- simulate -------------------------------------------------------

struct PathRow {
  double objective = 0.0;
  double realized_gain = 0.0;
  double quad_variation = 0.0;
  double terminal_inventory = 0.0;
  liq::Termination termination;
  bool clamped = false;
};

int run_simulate(const liq::ImpactParams& p, const std::string& out_dir,
                 int model, long n_paths, double lambda, std::uint64_t seed) {
  std::vector<PathRow> rows;
  rows.reserve(static_cast<std::size_t>(n_paths));
  liq::FirmValueParams fv;

  if (model == 1 || model == 2) {
    liq::RateRule rule;
    if (model == 1) {
      rule = [&p](double t, double q) {
        return -(2.0 * liq::dp_coefficient(p, t) + p.eta) * q / (2.0 * p.nu);
      };
    } else {
      rule = [&p, lambda](double t, double q) {
        return -(2.0 * liq::dp_coefficient_const_hazard(p, lambda, t) + p.eta) *
               q / (2.0 * p.nu);
      };
    }
    liq::HazardSpec hazard = liq::HazardSpec::constant(lambda);
    for (long k = 0; k < n_paths; ++k) {
      liq::PathSample sample =
          liq::generate_paths(p, fv, liq::mix_seed(seed, k), kSimSteps);
      double stop = std::numeric_limits<double>::infinity();
      if (model == 2) {
        liq::Rng draw(liq::mix_seed(seed ^ kQuantileStream, k));
        stop = liq::termination_time_quantile(hazard, draw.uniform_pos(), p.T);
      }
      liq::ReplayResult rr = liq::replay_strategy(sample, rule, p, stop,
                                                  liq::TerminationKind::hazard);
      PathRow row;
      row.objective = rr.pnl.objective;
      row.realized_gain = rr.pnl.realized_gain;
      row.quad_variation = rr.pnl.quad_variation;
      row.terminal_inventory = rr.trajectory.inventory.back();
      row.termination = rr.pnl.termination;
      row.clamped = rr.pnl.clamped;
      rows.push_back(row);
    }
  } else {
    liq::SolverGrid grid = liq::SolverGrid::stable_default(p.T, fv, kSimSteps);
    liq::ValueSurface vs = liq::solve_value_surface(p, fv, grid);
    for (long k = 0; k < n_paths; ++k) {
      liq::LiquidationPath path =
          liq::simulate_liquidation(vs, liq::mix_seed(seed, k));
      PathRow row;
      row.objective = path.objective;
      row.realized_gain = path.realized_gain;
      row.quad_variation = path.quad_variation;
      row.terminal_inventory = path.inventory.back();
      row.termination = path.termination;
      row.clamped = path.clamped;
      rows.push_back(row);
    }
  }

  std::filesystem::path dir(out_dir);
  auto csv = open_out(dir / "simulate_paths.csv");
  csv << "path,objective,realized_gain,quad_variation,terminal_inventory,"
         "termination_kind,termination_time,clamped\n";
  double sum = 0.0, sum_sq = 0.0, sum_inv = 0.0;
  long n_clamped = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const PathRow& row = rows[k];
    csv << k << "," << liq::format_sig(row.objective) << ","
        << liq::format_sig(row.realized_gain) << ","
        << liq::format_sig(row.quad_variation) << ","
        << liq::format_sig(row.terminal_inventory) << ","
        << liq::to_string(row.termination.kind) << ","
        << liq::format_sig(row.termination.time) << ","
        << (row.clamped ? 1 : 0) << "\n";
    sum += row.objective;
    sum_sq += row.objective * row.objective;
    sum_inv += row.terminal_inventory;
    n_clamped += row.clamped ? 1 : 0;
  }
  std::cout << "wrote " << (dir / "simulate_paths.csv").string() << "\n";

  const double n = static_cast<double>(rows.size());
  double mean = sum / n;
  double var = n > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1)) : 0.0;
  json summary;
  summary["mean_objective"] = mean;
  summary["stderr"] = std::sqrt(var / n);
  summary["mean_terminal_inventory"] = sum_inv / n;
  summary["clamp_rate"] = static_cast<double>(n_clamped) / n;
  write_json(dir / "simulate_summary.json", summary);
  return 0;
}

// ----- validate -------------------------------------------------------

int run_validate(int criterion) {
  if (criterion > 0) {
    liq::CriterionResult r = liq::run_criterion(criterion);
    liq::print_criterion(std::cout, r);
    return r.pass ? 0 : 1;
  }
  auto results = liq::run_validation_suite(std::cout);
  return liq::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal liquidation schedules under fixed, hazard-rate and "
               "barrier-terminated horizons"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 20240901;
  app.add_option("--config", config_path, "key=value parameter file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "RNG seed");
  ImpactFlags impact;
  add_impact_flags(app, impact);

  CLI::App* m1 = app.add_subcommand("model1", "fixed-horizon schedules");

  CLI::App* m2 = app.add_subcommand("model2", "hazard-terminated schedules");
  double lambda2 = 1.0;
  std::string hazard_file;
  CLI::Option* opt_lambda = m2->add_option("--lambda", lambda2, "constant hazard rate");
  CLI::Option* opt_hfile =
      m2->add_option("--hazard-file", hazard_file, "CSV of t,l hazard knots")
          ->check(CLI::ExistingFile);
  opt_lambda->excludes(opt_hfile);

  CLI::App* m3 = app.add_subcommand("model3", "barrier-terminated surface and path");
  liq::FirmValueParams fv;
  double x_max = 10.0;
  int n_space = 0;
  int n_time = 1000;
  bool force = false;
  m3->add_option("--beta", fv.beta, "firm value drift");
  m3->add_option("--xi", fv.xi, "firm value volatility");
  m3->add_option("--y0", fv.y0, "initial firm value");
  m3->add_option("--barrier", fv.barrier, "default barrier");
  m3->add_option("--xmax", x_max, "far-field cutoff in standardized log distance");
  m3->add_option("--nspace", n_space, "space nodes (0 = largest stable)");
  m3->add_option("--ntime", n_time, "time steps");
  m3->add_flag("--force", force, "run even on an unstable grid");

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo of the feedback strategy");
  int sim_model = 1;
  long n_paths = 10000;
  double sim_lambda = 1.0;
  sim->add_option("--model", sim_model, "model: 1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  sim->add_option("--paths", n_paths, "number of Monte Carlo paths")
      ->check(CLI::PositiveNumber);
  sim->add_option("--lambda", sim_lambda, "constant hazard rate (model 2)");

  CLI::App* val = app.add_subcommand("validate", "run the validation suite");
  int criterion = 0;
  val->add_option("--criterion", criterion, "run a single criterion (1..10)")
      ->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (val->parsed()) return run_validate(criterion);
    liq::ImpactParams p = resolve_params(config_path, impact);
    if (m1->parsed()) return run_model1(p, out_dir);
    if (m2->parsed()) {
      return run_model2(p, out_dir, opt_lambda->count() > 0 || hazard_file.empty(),
                        lambda2, hazard_file);
    }
    if (m3->parsed()) {
      fv.validate();
      return run_model3(p, out_dir, fv, x_max, n_space, n_time, force, seed);
    }
    if (sim->parsed()) return run_simulate(p, out_dir, sim_model, n_paths, sim_lambda, seed);
  } catch (const liq::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
