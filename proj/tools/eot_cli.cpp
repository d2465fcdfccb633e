// Command-line front end: load measures and costs, dispatch the exact and
// entropic solvers, and persist CSV tables plus optional SVG charts.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eot/entropic.hpp"
#include "eot/exact.hpp"
#include "eot/experiments.hpp"
#include "eot/io.hpp"
#include "eot/metrics.hpp"

namespace fs = std::filesystem;
using namespace eot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool plot = false;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--out", flags->out_dir, "Output directory");
  cmd->add_option("--seed", flags->seed, "Seed for all randomness (default 0)");
  cmd->add_flag("--plot", flags->plot, "Also write an SVG chart");
  cmd->add_flag("--verbose", flags->verbose, "Log solver iterations");
}

struct InstanceFlags {
  std::string mu_path;
  std::string nu_path;
  std::vector<std::string> cost_specs;
  std::vector<std::string> cost_matrix_paths;
  // Scenario fallback when no measure files are given.
  int n = 20, m = 20, days = 2;
};

void add_instance(CLI::App* cmd, InstanceFlags* flags) {
  cmd->add_option("--mu", flags->mu_path, "Source measure file (.csv or .json)");
  cmd->add_option("--nu", flags->nu_path, "Target measure file (.csv or .json)");
  cmd->add_option("--cost", flags->cost_specs,
                  "Cost spec, repeatable: euclidean | sqeuclidean | l1pow:P | "
                  "indicator:S | holder:A | wind:BETA:WX,WY");
  cmd->add_option("--cost-matrix", flags->cost_matrix_paths,
                  "Dense cost matrix CSV, repeatable");
  cmd->add_option("--n", flags->n, "Scenario support size of mu");
  cmd->add_option("--m", flags->m, "Scenario support size of nu");
  cmd->add_option("--days", flags->days, "Scenario cost count N");
}

struct Instance {
  Vector a;
  Vector b;
  CostFamily costs;
};

// Measures from files plus cost specs/matrices; without measure files, a
// seeded wind scenario.
Instance load_instance(const InstanceFlags& in, std::uint64_t seed) {
  if (in.mu_path.empty() != in.nu_path.empty()) {
    throw InvalidParameter("--mu and --nu must be given together");
  }
  if (in.mu_path.empty()) {
    ScenarioConfig cfg;
    cfg.n = in.n;
    cfg.m = in.m;
    cfg.days = in.days;
    cfg.seed = seed;
    Scenario sc = gen_sequential_scenario(cfg);
    return Instance{sc.mu.weights(), sc.nu.weights(), std::move(sc.costs)};
  }
  DiscreteMeasure mu = io::load_measure(in.mu_path);
  DiscreteMeasure nu = io::load_measure(in.nu_path);
  std::vector<Matrix> mats;
  for (const std::string& text : in.cost_specs) {
    mats.push_back(
        build_cost_matrix(CostSpec::parse(text), mu.points(), nu.points()));
  }
  for (const std::string& path : in.cost_matrix_paths) {
    Matrix c = io::load_matrix_csv(path);
    if (c.rows() != mu.size() || c.cols() != nu.size()) {
      throw DimensionError("cost matrix " + path +
                           " does not match the measure supports");
    }
    mats.push_back(std::move(c));
  }
  if (mats.empty()) {
    throw InvalidParameter("need at least one --cost or --cost-matrix");
  }
  return Instance{mu.weights(), nu.weights(), CostFamily(std::move(mats))};
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::string fmt(double v) { return io::format_double(v); }

int cmd_solve_exact(const CommonFlags& common, const InstanceFlags& in) {
  const Instance inst = load_instance(in, common.seed);
  const fs::path out = ensure_out_dir(common.out_dir);
  const EotExactResult res = eot_exact(inst.a, inst.b, inst.costs);

  std::vector<std::string> header{"value"};
  std::vector<std::string> cells{fmt(res.value)};
  for (int i = 0; i < inst.costs.count(); ++i) {
    header.push_back("per_cost_" + std::to_string(i + 1));
    cells.push_back(fmt(res.per_cost_values[i]));
  }
  for (int i = 0; i < inst.costs.count(); ++i) {
    header.push_back("lambda_" + std::to_string(i + 1));
    cells.push_back(fmt(res.lambda[i]));
  }
  io::write_file_atomic(out / "eot_exact.csv",
                        io::csv_line(header) + io::csv_line(cells));
  for (int i = 0; i < inst.costs.count(); ++i) {
    io::save_matrix_csv(res.couplings[static_cast<size_t>(i)],
                        out / ("plan_" + std::to_string(i + 1) + ".csv"));
  }
  std::cout << "value " << fmt(res.value) << "\n";
  return kExitOk;
}

int cmd_solve_entropic(const CommonFlags& common, const InstanceFlags& in,
                       double eps, const std::string& algo,
                       const SolveOptions& opts) {
  if (eps <= 0.0) {
    throw InvalidParameter("--eps must be strictly positive");
  }
  if (algo != "pam" && algo != "apga") {
    throw InvalidParameter("--algo must be pam or apga");
  }
  const Instance inst = load_instance(in, common.seed);
  const fs::path out = ensure_out_dir(common.out_dir);

  RegularizedProblem prob(inst.a, inst.b, inst.costs, eps);
  const SolveReport rep =
      algo == "pam" ? pam_solve(prob, opts) : apga_solve(prob, opts);

  std::vector<std::string> header{"value_dual", "value_primal",
                                  "marginal_residual", "iterations"};
  std::vector<std::string> cells{fmt(rep.dual_value), fmt(rep.primal_value),
                                 fmt(rep.marginal_residual),
                                 std::to_string(rep.iterations)};
  for (int i = 0; i < inst.costs.count(); ++i) {
    header.push_back("lambda_" + std::to_string(i + 1));
    cells.push_back(fmt(rep.lambda_final[i]));
  }
  io::write_file_atomic(out / "report.csv",
                        io::csv_line(header) + io::csv_line(cells));

  std::string trace = io::csv_line({"iter", "dual_value", "residual"});
  for (const TraceRow& t : rep.trace) {
    trace += io::csv_line(
        {std::to_string(t.iteration), fmt(t.dual_value), fmt(t.residual)});
  }
  io::write_file_atomic(out / "trace.csv", trace);

  if (common.plot) {
    io::PlotSeries s;
    s.label = algo;
    for (const TraceRow& t : rep.trace) {
      s.x.push_back(static_cast<double>(t.iteration));
      s.y.push_back(t.dual_value);
    }
    io::write_file_atomic(
        out / "trace.svg",
        io::render_line_chart({s}, "iteration", "dual value", false));
  }
  if (common.verbose) {
    for (const TraceRow& t : rep.trace) {
      std::cerr << "iter " << t.iteration << " value " << t.dual_value
                << " residual " << t.residual << "\n";
    }
  }
  std::cout << "dual " << fmt(rep.dual_value) << " primal "
            << fmt(rep.primal_value) << (rep.converged ? "" : " (unconverged)")
            << "\n";
  return kExitOk;
}

int cmd_dudley(const CommonFlags& common, const std::string& mu_path,
               const std::string& nu_path, double alpha) {
  DiscreteMeasure mu = io::load_measure(mu_path);
  DiscreteMeasure nu = io::load_measure(nu_path);
  if (mu.points().rows() != nu.points().rows() ||
      mu.points().cols() != nu.points().cols() ||
      (mu.points().array() != nu.points().array()).any()) {
    throw InvalidParameter(
        "dudley needs both measures on the same support (identical point "
        "lists)");
  }
  const Matrix dist =
      build_cost_matrix(CostSpec::euclidean(), mu.points(), mu.points());
  const double value = holder_ipm(mu.weights(), nu.weights(), dist, alpha);
  const double oracle =
      dudley_ipm_exact(mu.weights(), nu.weights(), dist, alpha);

  const fs::path out = ensure_out_dir(common.out_dir);
  io::write_file_atomic(out / "dudley.csv",
                        io::csv_line({"alpha", "value", "ipm_oracle"}) +
                            io::csv_line({fmt(alpha), fmt(value), fmt(oracle)}));
  std::cout << "value " << fmt(value) << "\n";
  return kExitOk;
}

int cmd_sweep(const CommonFlags& common, const InstanceFlags& in,
              std::vector<double> eps_list, const std::string& algo,
              const SolveOptions& opts) {
  if (algo != "pam" && algo != "apga") {
    throw InvalidParameter("--algo must be pam or apga");
  }
  const Instance inst = load_instance(in, common.seed);
  if (eps_list.empty()) {
    // The default grid scales the usual {0.5 ... 0.005} ladder by the
    // largest cost entry.
    const double scale = inst.costs.max_abs_entry();
    eps_list = {0.5 * scale, 0.1 * scale, 0.05 * scale, 0.01 * scale,
                0.005 * scale};
  }
  const auto rows =
      sweep_epsilon(inst.a, inst.b, inst.costs,
                    eps_list, algo == "pam" ? Algo::pam : Algo::apga, opts);

  std::string csv = io::csv_line({"epsilon", "dual_value", "primal_value",
                                  "relative_error", "iterations",
                                  "wall_time_s"});
  for (const SweepRow& r : rows) {
    csv += io::csv_line({fmt(r.epsilon), fmt(r.dual_value),
                         fmt(r.primal_value), fmt(r.relative_error),
                         std::to_string(r.iterations), fmt(r.wall_time_s)});
  }
  const fs::path out = ensure_out_dir(common.out_dir);
  io::write_file_atomic(out / "sweep.csv", csv);

  if (common.plot) {
    io::PlotSeries s;
    s.label = "RE (" + algo + ")";
    for (const SweepRow& r : rows) {
      s.x.push_back(r.epsilon);
      s.y.push_back(r.relative_error);
    }
    io::write_file_atomic(
        out / "sweep.svg",
        io::render_line_chart({s}, "epsilon", "relative error", true));
  }
  std::cout << "sweep rows " << rows.size() << "\n";
  return kExitOk;
}

int cmd_bench(const CommonFlags& common, int n, int m,
              const std::vector<int>& days_list, double eps,
              const SolveOptions& opts) {
  std::vector<std::pair<ScenarioConfig, double>> configs;
  for (const int days : days_list) {
    ScenarioConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.days = days;
    cfg.seed = common.seed;
    configs.emplace_back(cfg, eps);
  }
  const auto rows = time_accuracy_benchmark(configs, opts);

  std::string csv = io::csv_line({"config", "n", "m", "days", "epsilon",
                                  "solver", "value", "wall_time_s", "oracle",
                                  "note"});
  for (const BenchRow& r : rows) {
    csv += io::csv_line({std::to_string(r.config_index), std::to_string(r.n),
                         std::to_string(r.m), std::to_string(r.days),
                         fmt(r.epsilon), r.solver, fmt(r.value),
                         fmt(r.wall_time_s), r.has_oracle ? "yes" : "no",
                         r.note});
  }
  const fs::path out = ensure_out_dir(common.out_dir);
  io::write_file_atomic(out / "bench.csv", csv);

  if (common.plot) {
    std::vector<io::PlotSeries> series;
    for (const BenchRow& r : rows) {
      if (r.trajectory.empty()) {
        continue;
      }
      io::PlotSeries s;
      s.label = r.solver + " N=" + std::to_string(r.days);
      for (const BenchPoint& p : r.trajectory) {
        s.x.push_back(p.time_s);
        s.y.push_back(p.value);
      }
      series.push_back(std::move(s));
    }
    io::write_file_atomic(out / "bench.svg",
                          io::render_line_chart(series, "time (s)",
                                                "value", false));
  }
  std::cout << "bench rows " << rows.size() << "\n";
  return kExitOk;
}

int cmd_scenario(const CommonFlags& common, int n, int m, int days) {
  ScenarioConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.days = days;
  cfg.seed = common.seed;
  const Scenario sc = gen_sequential_scenario(cfg);
  const fs::path out = ensure_out_dir(common.out_dir);
  io::save_measure_csv(sc.mu, out / "mu.csv");
  io::save_measure_csv(sc.nu, out / "nu.csv");
  for (int i = 0; i < sc.costs.count(); ++i) {
    io::save_matrix_csv(sc.costs[i],
                        out / ("cost_" + std::to_string(i + 1) + ".csv"));
  }
  std::cout << "scenario written to " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equitable optimal transport: exact LP and entropic solvers, derived "
      "metrics, and benchmark studies"};
  app.require_subcommand(1);

  CommonFlags common;
  InstanceFlags instance;
  SolveOptions opts;
  double eps = 0.05;
  std::string algo = "pam";
  double alpha = 1.0;
  std::vector<double> eps_list;
  std::string mu_path, nu_path;
  int n = 30, m = 30, days = 2;
  std::vector<int> days_list{2, 3};

  auto add_solver_opts = [&](CLI::App* cmd) {
    cmd->add_option("--max-iter", opts.max_iter, "Iteration cap");
    cmd->add_option("--tol", opts.tol, "Marginal residual tolerance");
    cmd->add_option("--value-tol", opts.value_tol,
                    "Relative dual-change tolerance");
    cmd->add_option("--trace-every", opts.trace_every, "Trace row stride");
  };

  CLI::App* solve_exact =
      app.add_subcommand("solve-exact", "Exact LP solve of the equitable problem");
  add_common(solve_exact, &common);
  add_instance(solve_exact, &instance);

  CLI::App* solve_entropic =
      app.add_subcommand("solve-entropic", "Entropic solve (PAM or APGA)");
  add_common(solve_entropic, &common);
  add_instance(solve_entropic, &instance);
  solve_entropic->add_option("--eps", eps, "Regularization strength");
  solve_entropic->add_option("--algo", algo, "pam or apga");
  add_solver_opts(solve_entropic);

  CLI::App* dudley_cmd =
      app.add_subcommand("dudley", "Dudley / Holder IPM between common-support measures");
  add_common(dudley_cmd, &common);
  dudley_cmd->add_option("--mu", mu_path, "Source measure")->required();
  dudley_cmd->add_option("--nu", nu_path, "Target measure")->required();
  dudley_cmd->add_option("--alpha", alpha, "Holder exponent in (0, 1]");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep-eps", "Relative error against the LP over an epsilon grid");
  add_common(sweep_cmd, &common);
  add_instance(sweep_cmd, &instance);
  sweep_cmd->add_option("--eps-list", eps_list,
                        "Strictly decreasing grid (default 0.5..0.005 x "
                        "largest cost)");
  sweep_cmd->add_option("--algo", algo, "pam or apga");
  add_solver_opts(sweep_cmd);

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time-accuracy comparison of PAM, APGA, and the LP");
  add_common(bench_cmd, &common);
  bench_cmd->add_option("--n", n, "Support size of mu");
  bench_cmd->add_option("--m", m, "Support size of nu");
  bench_cmd->add_option("--days", days_list, "Cost counts, repeatable");
  bench_cmd->add_option("--eps", eps, "Regularization strength");
  add_solver_opts(bench_cmd);

  CLI::App* scenario_cmd =
      app.add_subcommand("scenario", "Generate and save a wind scenario");
  add_common(scenario_cmd, &common);
  scenario_cmd->add_option("--n", n, "Support size of mu");
  scenario_cmd->add_option("--m", m, "Support size of nu");
  scenario_cmd->add_option("--days", days, "Cost count N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_exact->parsed()) {
      return cmd_solve_exact(common, instance);
    }
    if (solve_entropic->parsed()) {
      return cmd_solve_entropic(common, instance, eps, algo, opts);
    }
    if (dudley_cmd->parsed()) {
      return cmd_dudley(common, mu_path, nu_path, alpha);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(common, instance, eps_list, algo, opts);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(common, n, m, days_list, eps, opts);
    }
    if (scenario_cmd->parsed()) {
      return cmd_scenario(common, n, m, days);
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
