#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "eot/entropic.hpp"
#include "eot/measures.hpp"
#include "eot/types.hpp"

namespace eot {

/// Deterministic random stream: mt19937_64 with fixed mappings (53-bit
/// uniforms, Box-Muller gaussians, unit-disk rejection from the square), so
/// the same seed reproduces bit-identical samples everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Uniform on (0, 1].
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// One standard gaussian pair (Box-Muller).
  std::pair<double, double> gaussian_pair();
  /// Uniform on the closed unit disk, by rejection from [-1,1]^2.
  Eigen::Vector2d unit_disk();

 private:
  std::mt19937_64 state_;
};

/// Point clouds and wind costs of the sequential transport study.
struct ScenarioConfig {
  int n = 20;
  int m = 20;
  int days = 2;  // number of costs N
  std::uint64_t seed = 0;
  Eigen::Vector2d mean_mu{3.0, 3.0};
  Eigen::Vector2d mean_nu{4.0, 4.0};
  Eigen::Matrix2d cov_mu = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d cov_nu = (Eigen::Matrix2d() << 1.0, -0.2, -0.2, 1.0).finished();
  double wind_coefficient = 0.7;
};

struct Scenario {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
  CostFamily costs;
  std::vector<Eigen::Vector2d> winds;
};

/// Sample the scenario: uniform weights, gaussian supports, one wind vector
/// per day, and the wind cost matrices ||y-x|| - beta <w_i, y-x> (always
/// nonnegative for ||w|| <= 1, beta < 1).
Scenario gen_sequential_scenario(const ScenarioConfig& cfg);

enum class Algo { pam, apga };

struct SweepRow {
  double epsilon = 0.0;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double relative_error = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  bool ok = true;
  std::string note;
};

/// Run the chosen solver over a strictly decreasing epsilon grid and report
/// the relative error against the exact LP value. Solver failures are
/// captured per row.
std::vector<SweepRow> sweep_epsilon(const Vector& a, const Vector& b,
                                    const CostFamily& family,
                                    const std::vector<double>& eps_list,
                                    Algo algo, const SolveOptions& opts = {});

struct BenchPoint {
  int iteration;
  double value;
  double time_s;
};

struct BenchRow {
  int config_index = 0;
  int n = 0;
  int m = 0;
  int days = 0;
  double epsilon = 0.0;
  std::string solver;  // "pam", "apga", "lp"
  double value = 0.0;
  double wall_time_s = 0.0;
  bool has_oracle = true;
  bool ok = true;
  std::string note;
  std::vector<BenchPoint> trajectory;
};

/// LP ground truth is only attempted while n*m*N stays under this cap.
inline constexpr long kLpSizeCap = 40000;

/// Time-accuracy study: one row per (config, solver); the LP row carries the
/// exact value when the instance is under the size cap, otherwise the
/// entropic rows are flagged "no-oracle".
std::vector<BenchRow> time_accuracy_benchmark(
    const std::vector<std::pair<ScenarioConfig, double>>& configs,
    const SolveOptions& opts = {});

}  // namespace eot
