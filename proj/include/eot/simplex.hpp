#pragma once

#include <utility>
#include <vector>

#include "eot/errors.hpp"
#include "eot/types.hpp"

namespace eot {

enum class Relation { le, eq, ge };

/// One constraint: sparse coefficient row, relation, right-hand side.
struct ConstraintRow {
  std::vector<std::pair<int, double>> coeffs;
  Relation rel = Relation::eq;
  double rhs = 0.0;
};

/// Dense LP in the form
///   minimize (or maximize) c^T x
///   subject to the listed rows and per-variable bounds.
/// Bounds default to [0, +inf); -inf/+inf are allowed.
struct LinearProgram {
  Vector objective;
  bool maximize = false;
  std::vector<ConstraintRow> rows;
  Vector lower;  // empty means all zero
  Vector upper;  // empty means all +inf

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_row(ConstraintRow row) { rows.push_back(std::move(row)); }
};

enum class SolveStatus { optimal, infeasible, unbounded };

/// Output of lp_solve. For optimal status, `duals` holds one multiplier per
/// constraint row in the convention
///
///   value = sum_i duals[i] * rhs[i] + (contribution of finite bounds),
///
/// i.e. for a minimization problem duals of `<=` rows are <= 0 and duals of
/// `>=` rows are >= 0; duals of a maximization problem are negated so the
/// same identity holds. Feasibility and complementary-slackness residuals
/// are validated before returning.
struct ExactSolution {
  double value = 0.0;
  Vector primal;
  Vector duals;
  SolveStatus status = SolveStatus::optimal;
  double feasibility_residual = 0.0;
  double complementarity_residual = 0.0;
};

/// Dense two-phase primal simplex. Infeasible and unbounded problems are
/// reported through `status`; cycling or loss of accuracy throws
/// NumericalFailure.
ExactSolution lp_solve(const LinearProgram& lp);

}  // namespace eot
