#include "eot/experiments.hpp"

#include <chrono>
#include <cmath>

#include "eot/exact.hpp"
#include "eot/metrics.hpp"

namespace eot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::Matrix2d cholesky_2x2(const Eigen::Matrix2d& cov) {
  Eigen::LLT<Eigen::Matrix2d> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw InvalidParameter("covariance must be symmetric positive definite");
  }
  return llt.matrixL();
}

}  // namespace

double Rng::uniform() {
  // 53-bit mantissa mapped to (0, 1]: never zero, so logs and Box-Muller
  // stay finite.
  return (static_cast<double>(state_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::pair<double, double> Rng::gaussian_pair() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

Eigen::Vector2d Rng::unit_disk() {
  for (;;) {
    const double x = uniform(-1.0, 1.0);
    const double y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) {
      return {x, y};
    }
  }
}

Scenario gen_sequential_scenario(const ScenarioConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1 || cfg.days < 1) {
    throw InvalidParameter("scenario sizes must be positive");
  }
  if (cfg.wind_coefficient < 0.0 || cfg.wind_coefficient >= 1.0) {
    throw InvalidParameter("wind coefficient must lie in [0, 1)");
  }
  const Eigen::Matrix2d l_mu = cholesky_2x2(cfg.cov_mu);
  const Eigen::Matrix2d l_nu = cholesky_2x2(cfg.cov_nu);

  Rng rng(cfg.seed);
  Matrix x(cfg.n, 2);
  for (int i = 0; i < cfg.n; ++i) {
    auto [z0, z1] = rng.gaussian_pair();
    x.row(i) = (cfg.mean_mu + l_mu * Eigen::Vector2d(z0, z1)).transpose();
  }
  Matrix y(cfg.m, 2);
  for (int j = 0; j < cfg.m; ++j) {
    auto [z0, z1] = rng.gaussian_pair();
    y.row(j) = (cfg.mean_nu + l_nu * Eigen::Vector2d(z0, z1)).transpose();
  }

  std::vector<Eigen::Vector2d> winds;
  winds.reserve(static_cast<size_t>(cfg.days));
  std::vector<Matrix> costs;
  costs.reserve(static_cast<size_t>(cfg.days));
  for (int d = 0; d < cfg.days; ++d) {
    const Eigen::Vector2d w = rng.unit_disk();
    winds.push_back(w);
    Vector direction(2);
    direction << w[0], w[1];
    costs.push_back(build_cost_matrix(
        CostSpec::wind(direction, cfg.wind_coefficient), x, y));
  }

  return Scenario{DiscreteMeasure::uniform(std::move(x)),
                  DiscreteMeasure::uniform(std::move(y)),
                  CostFamily(std::move(costs)), std::move(winds)};
}

std::vector<SweepRow> sweep_epsilon(const Vector& a, const Vector& b,
                                    const CostFamily& family,
                                    const std::vector<double>& eps_list,
                                    Algo algo, const SolveOptions& opts) {
  if (eps_list.empty()) {
    throw InvalidParameter("empty epsilon grid");
  }
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (eps_list[i] <= 0.0) {
      throw InvalidParameter("epsilon grid must be strictly positive");
    }
    if (i > 0 && eps_list[i] >= eps_list[i - 1]) {
      throw InvalidParameter("epsilon grid must be strictly decreasing");
    }
  }

  const double truth = eot_exact(a, b, family).value;
  std::vector<SweepRow> rows;
  rows.reserve(eps_list.size());
  for (const double eps : eps_list) {
    SweepRow row;
    row.epsilon = eps;
    try {
      RegularizedProblem prob(a, b, family, eps);
      const auto start = Clock::now();
      const SolveReport rep =
          algo == Algo::pam ? pam_solve(prob, opts) : apga_solve(prob, opts);
      row.wall_time_s = seconds_since(start);
      row.dual_value = rep.dual_value;
      row.primal_value = rep.primal_value;
      row.relative_error = truth > 0.0
                               ? relative_error(rep.primal_value, truth)
                               : rep.primal_value - truth;
      row.iterations = rep.iterations;
      if (!rep.converged) {
        row.note = "unconverged";
      }
    } catch (const Error& e) {
      row.ok = false;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BenchRow> time_accuracy_benchmark(
    const std::vector<std::pair<ScenarioConfig, double>>& configs,
    const SolveOptions& opts) {
  std::vector<BenchRow> rows;
  int index = 0;
  for (const auto& [cfg, eps] : configs) {
    const Scenario sc = gen_sequential_scenario(cfg);
    const Vector& a = sc.mu.weights();
    const Vector& b = sc.nu.weights();
    const long size = static_cast<long>(cfg.n) * cfg.m * cfg.days;
    const bool with_lp = size <= kLpSizeCap;

    BenchRow base;
    base.config_index = index;
    base.n = cfg.n;
    base.m = cfg.m;
    base.days = cfg.days;
    base.epsilon = eps;
    base.has_oracle = with_lp;
    if (!with_lp) {
      base.note = "no-oracle";
    }

    if (with_lp) {
      BenchRow lp_row = base;
      lp_row.solver = "lp";
      try {
        const auto start = Clock::now();
        lp_row.value = eot_exact(a, b, sc.costs).value;
        lp_row.wall_time_s = seconds_since(start);
        lp_row.trajectory.push_back({0, lp_row.value, lp_row.wall_time_s});
      } catch (const Error& e) {
        lp_row.ok = false;
        lp_row.note = e.what();
      }
      rows.push_back(std::move(lp_row));
    }

    for (const Algo algo : {Algo::pam, Algo::apga}) {
      BenchRow row = base;
      row.solver = algo == Algo::pam ? "pam" : "apga";
      try {
        RegularizedProblem prob(a, b, sc.costs, eps);
        const auto start = Clock::now();
        const SolveReport rep =
            algo == Algo::pam ? pam_solve(prob, opts) : apga_solve(prob, opts);
        row.wall_time_s = seconds_since(start);
        // The comparable estimate is the rounded primal value: it is an
        // upper bound on the LP value for every epsilon.
        row.value = rep.primal_value;
        if (!rep.converged) {
          row.note = row.note.empty() ? "unconverged" : row.note + ";unconverged";
        }
        // Value trajectory against wall clock, proportioned over the trace;
        // values are deterministic, the clock is not.
        for (const TraceRow& t : rep.trace) {
          row.trajectory.push_back(
              {t.iteration,
               t.dual_value,
               row.wall_time_s * static_cast<double>(t.iteration) /
                   static_cast<double>(std::max(1, rep.iterations))});
        }
      } catch (const Error& e) {
        row.ok = false;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
    ++index;
  }
  return rows;
}

}  // namespace eot
