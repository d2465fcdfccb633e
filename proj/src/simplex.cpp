#include "eot/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace eot {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;
constexpr double kComplTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard-form problem: minimize c^T x, A x = b, x >= 0, b >= 0.
// Column metadata maps standard-form variables back to the caller's
// variables and rows so the primal and duals can be reassembled.
struct StandardForm {
  Matrix A;          // m x n
  Vector b;          // m
  Vector c;          // n
  int structural;    // columns 0..structural-1 come from the original LP
  // For structural column j: orig_var[j] is the original variable index,
  // col_scale[j] is +1 or -1 (negated columns of split/flipped variables),
  // var_shift is applied per original variable when reading the solution.
  std::vector<int> orig_var;
  std::vector<double> col_scale;
  Vector var_shift;          // per original variable
  std::vector<int> slack_row;  // for columns >= structural: owning row, -1 none
};

// Dense tableau two-phase simplex with Bland fallback. Bases are tracked by
// column index; artificial columns live at the end and are banned in
// phase 2.
class Tableau {
 public:
  Tableau(const StandardForm& sf) : sf_(sf), m_(static_cast<int>(sf.A.rows())) {
    const int n = static_cast<int>(sf.A.cols());
    n_total_ = n + m_;  // one artificial per row
    T_ = Matrix::Zero(m_ + 1, n_total_ + 1);
    T_.block(0, 0, m_, n) = sf.A;
    for (int i = 0; i < m_; ++i) {
      T_(i, n + i) = 1.0;
      T_(i, n_total_) = sf.b[i];
    }
    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      basis_[static_cast<size_t>(i)] = n + i;
    }
    n_ = n;
  }

  SolveStatus run() {
    // Phase 1: minimize the sum of artificials.
    set_objective_phase1();
    if (!iterate(/*allow_artificial=*/true)) {
      return SolveStatus::unbounded;  // cannot happen in phase 1
    }
    if (T_(m_, n_total_) < -kFeasTol) {
      return SolveStatus::infeasible;
    }
    drive_out_artificials();
    // Phase 2: the caller's objective, artificials banned.
    set_objective_phase2();
    if (!iterate(/*allow_artificial=*/false)) {
      return SolveStatus::unbounded;
    }
    return SolveStatus::optimal;
  }

  Vector basic_solution() const {
    Vector x = Vector::Zero(n_total_);
    for (int i = 0; i < m_; ++i) {
      x[basis_[static_cast<size_t>(i)]] = T_(i, n_total_);
    }
    return x.head(n_);
  }

  const std::vector<int>& basis() const { return basis_; }

 private:
  void set_objective_phase1() {
    // Objective row holds reduced costs (negated costs for minimization);
    // start from c = sum of artificials, priced out against the basis.
    T_.row(m_).setZero();
    for (int j = n_; j < n_total_; ++j) {
      T_(m_, j) = 1.0;
    }
    for (int i = 0; i < m_; ++i) {
      // every artificial is basic: subtract its row
      T_.row(m_) -= T_.row(i);
    }
  }

  void set_objective_phase2() {
    T_.row(m_).setZero();
    for (int j = 0; j < n_; ++j) {
      T_(m_, j) = sf_.c[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[static_cast<size_t>(i)];
      const double cb = bj < n_ ? sf_.c[bj] : 0.0;
      if (cb != 0.0) {
        T_.row(m_) -= cb * T_.row(i);
      }
    }
  }

  void pivot(int row, int col) {
    T_.row(row) /= T_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i != row && std::abs(T_(i, col)) > 0.0) {
        T_.row(i) -= T_(i, col) * T_.row(row);
      }
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  // Returns false on unboundedness. Throws NumericalFailure if the
  // iteration cap is hit even under Bland's rule.
  bool iterate(bool allow_artificial) {
    const long cap = 200L + 50L * static_cast<long>(m_ + n_total_);
    long stalled = 0;
    double last_obj = T_(m_, n_total_);
    for (long it = 0; it < cap; ++it) {
      const bool bland = stalled > 2L * (m_ + 8);
      const int limit = allow_artificial ? n_total_ : n_;
      int col = -1;
      if (bland) {
        for (int j = 0; j < limit; ++j) {
          if (T_(m_, j) < -kReducedCostTol) {
            col = j;
            break;
          }
        }
      } else {
        double best = -kReducedCostTol;
        for (int j = 0; j < limit; ++j) {
          if (T_(m_, j) < best) {
            best = T_(m_, j);
            col = j;
          }
        }
      }
      if (col < 0) {
        return true;  // optimal
      }
      int row = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        const double aij = T_(i, col);
        if (aij > kPivotTol) {
          const double ratio = T_(i, n_total_) / aij;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && row >= 0 &&
               basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(row)])) {
            best_ratio = ratio;
            row = i;
          }
        }
      }
      if (row < 0) {
        return false;  // unbounded direction
      }
      pivot(row, col);
      const double obj = T_(m_, n_total_);
      if (obj > last_obj - 1e-13) {
        ++stalled;
      } else {
        stalled = 0;
        last_obj = obj;
      }
    }
    throw NumericalFailure("simplex iteration cap exceeded (cycling guard)");
  }

  // After phase 1, swap basic artificials for structural columns where the
  // row allows it; rows with no eligible pivot are redundant and keep their
  // zero-valued artificial.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) {
        continue;
      }
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(T_(i, j)) > 1e-7) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      }
    }
  }

  const StandardForm& sf_;
  int m_;
  int n_ = 0;
  int n_total_ = 0;
  Matrix T_;
  std::vector<int> basis_;
};

StandardForm build_standard_form(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  if (nv == 0) {
    throw InvalidParameter("linear program has no variables");
  }
  Vector lower = lp.lower.size() ? lp.lower : Vector::Zero(nv);
  Vector upper = lp.upper.size() ? lp.upper : Vector::Constant(nv, kInf);
  if (lower.size() != nv || upper.size() != nv) {
    throw DimensionError("bound vectors must match the variable count");
  }

  StandardForm sf;
  sf.var_shift = Vector::Zero(nv);

  // Column plan per original variable. Finite lower bounds are shifted out;
  // a variable that is free below gets either a flipped column (finite
  // upper) or a +/- split. Finite upper bounds on shifted variables become
  // extra <= rows.
  struct Plan {
    int col_pos = -1;
    int col_neg = -1;  // only for free variables
    double extra_upper = kInf;  // residual upper bound on the shifted column
  };
  std::vector<Plan> plans(static_cast<size_t>(nv));
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    const double lo = lower[j];
    const double hi = upper[j];
    if (lo > hi) {
      throw InvalidParameter("empty bound interval on variable " + std::to_string(j));
    }
    Plan& p = plans[static_cast<size_t>(j)];
    if (std::isfinite(lo)) {
      sf.var_shift[j] = lo;
      p.col_pos = ncols++;
      sf.orig_var.push_back(j);
      sf.col_scale.push_back(1.0);
      if (std::isfinite(hi)) {
        p.extra_upper = hi - lo;
      }
    } else if (std::isfinite(hi)) {
      // x = hi - x', x' >= 0
      sf.var_shift[j] = hi;
      p.col_pos = ncols++;
      sf.orig_var.push_back(j);
      sf.col_scale.push_back(-1.0);
    } else {
      p.col_pos = ncols++;
      sf.orig_var.push_back(j);
      sf.col_scale.push_back(1.0);
      p.col_neg = ncols++;
      sf.orig_var.push_back(j);
      sf.col_scale.push_back(-1.0);
    }
  }

  std::vector<ConstraintRow> rows = lp.rows;
  for (int j = 0; j < nv; ++j) {
    const Plan& p = plans[static_cast<size_t>(j)];
    if (std::isfinite(p.extra_upper)) {
      ConstraintRow r;
      r.coeffs = {{j, 1.0}};
      r.rel = Relation::le;
      r.rhs = upper[j];  // in original coordinates; shift handled below
      rows.push_back(std::move(r));
    }
  }

  const int nrows = static_cast<int>(rows.size());
  int nslack = 0;
  for (const ConstraintRow& r : rows) {
    if (r.rel != Relation::eq) {
      ++nslack;
    }
  }

  const double sign = lp.maximize ? -1.0 : 1.0;
  sf.structural = ncols;
  sf.A = Matrix::Zero(nrows, ncols + nslack);
  sf.b = Vector::Zero(nrows);
  sf.c = Vector::Zero(ncols + nslack);
  sf.slack_row.assign(static_cast<size_t>(ncols + nslack), -1);
  for (int j = 0; j < ncols; ++j) {
    sf.c[j] = sign * lp.objective[sf.orig_var[static_cast<size_t>(j)]] *
              sf.col_scale[static_cast<size_t>(j)];
  }

  int slack = ncols;
  for (int i = 0; i < nrows; ++i) {
    const ConstraintRow& r = rows[i];
    double rhs = r.rhs;
    for (const auto& [var, coef] : r.coeffs) {
      if (var < 0 || var >= nv) {
        throw DimensionError("constraint references variable " + std::to_string(var));
      }
      if (!std::isfinite(coef) || !std::isfinite(r.rhs)) {
        throw InvalidParameter("constraints must have finite coefficients");
      }
      const Plan& p = plans[static_cast<size_t>(var)];
      rhs -= coef * sf.var_shift[var];
      sf.A(i, p.col_pos) += coef * sf.col_scale[static_cast<size_t>(p.col_pos)];
      if (p.col_neg >= 0) {
        sf.A(i, p.col_neg) += coef * sf.col_scale[static_cast<size_t>(p.col_neg)];
      }
    }
    if (r.rel == Relation::le) {
      sf.A(i, slack) = 1.0;
      sf.slack_row[static_cast<size_t>(slack)] = i;
      ++slack;
    } else if (r.rel == Relation::ge) {
      sf.A(i, slack) = -1.0;
      sf.slack_row[static_cast<size_t>(slack)] = i;
      ++slack;
    }
    sf.b[i] = rhs;
    if (sf.b[i] < 0.0) {
      sf.A.row(i) = -sf.A.row(i);
      sf.b[i] = -sf.b[i];
    }
  }
  return sf;
}

}  // namespace

ExactSolution lp_solve(const LinearProgram& lp) {
  for (const ConstraintRow& r : lp.rows) {
    if (!std::isfinite(r.rhs)) {
      throw InvalidParameter("constraint right-hand sides must be finite");
    }
  }
  StandardForm sf = build_standard_form(lp);
  Tableau tableau(sf);

  ExactSolution sol;
  sol.status = tableau.run();
  if (sol.status != SolveStatus::optimal) {
    return sol;
  }

  // Refine the basic solution against the original data: solve B x_B = b and
  // B^T y = c_B directly instead of trusting the accumulated tableau.
  const std::vector<int>& basis = tableau.basis();
  const int m = static_cast<int>(sf.A.rows());
  const int ncols = static_cast<int>(sf.A.cols());
  Matrix B(m, m);
  Vector cb(m);
  for (int i = 0; i < m; ++i) {
    const int j = basis[static_cast<size_t>(i)];
    if (j < ncols) {
      B.col(i) = sf.A.col(j);
      cb[i] = sf.c[j];
    } else {
      B.col(i) = Vector::Unit(m, j - ncols);  // artificial left in a redundant row
      cb[i] = 0.0;
    }
  }
  Eigen::PartialPivLU<Matrix> lu(B);
  Vector xb = lu.solve(sf.b);
  Vector y = lu.transpose().solve(cb);

  Vector x_std = Vector::Zero(ncols);
  for (int i = 0; i < m; ++i) {
    const int j = basis[static_cast<size_t>(i)];
    if (j < ncols) {
      x_std[j] = xb[i];
    }
  }

  // Reassemble the caller's variables.
  const int nv = lp.num_vars();
  sol.primal = sf.var_shift;
  for (int j = 0; j < sf.structural; ++j) {
    sol.primal[sf.orig_var[static_cast<size_t>(j)]] +=
        sf.col_scale[static_cast<size_t>(j)] * x_std[j];
  }
  sol.value = lp.objective.dot(sol.primal);

  // Duals in the caller's convention: standard-form rows are ordered as the
  // caller's rows followed by the internal upper-bound rows, and the sign of
  // y was flipped together with b for negative-rhs rows -- undone here by
  // recomputing against the caller's rows directly below.
  const int nrows_user = static_cast<int>(lp.rows.size());
  const double sign = lp.maximize ? -1.0 : 1.0;
  sol.duals = Vector::Zero(nrows_user);
  for (int i = 0; i < nrows_user; ++i) {
    sol.duals[i] = sign * y[i];
  }

  // Row-sign flips during standard-form construction change the dual's sign
  // too; detect them by replaying the construction order.
  {
    // Rebuild rhs in construction order to know which rows were negated.
    std::vector<ConstraintRow> rows = lp.rows;
    Vector lower = lp.lower.size() ? lp.lower : Vector::Zero(nv);
    Vector upper = lp.upper.size() ? lp.upper : Vector::Constant(nv, kInf);
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(lower[j]) && std::isfinite(upper[j])) {
        ConstraintRow r;
        r.coeffs = {{j, 1.0}};
        r.rel = Relation::le;
        r.rhs = upper[j];
        rows.push_back(std::move(r));
      }
    }
    for (int i = 0; i < nrows_user; ++i) {
      double rhs = rows[static_cast<size_t>(i)].rhs;
      for (const auto& [var, coef] : rows[static_cast<size_t>(i)].coeffs) {
        rhs -= coef * sf.var_shift[var];
      }
      if (rhs < 0.0) {
        sol.duals[i] = -sol.duals[i];
      }
    }
  }

  // Complementary slackness in standard form: |x_j * (c_j - A_j^T y)| over
  // every column (slack columns carry the row complementarity).
  {
    Vector reduced = sf.c - sf.A.transpose() * y;
    sol.complementarity_residual =
        x_std.cwiseProduct(reduced).cwiseAbs().maxCoeff();
  }

  // Validate feasibility on the caller's data.
  double feas = 0.0;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const ConstraintRow& r = lp.rows[i];
    double lhs = 0.0;
    for (const auto& [var, coef] : r.coeffs) {
      lhs += coef * sol.primal[var];
    }
    const double viol = r.rel == Relation::eq  ? std::abs(lhs - r.rhs)
                        : r.rel == Relation::le ? std::max(0.0, lhs - r.rhs)
                                                : std::max(0.0, r.rhs - lhs);
    feas = std::max(feas, viol);
  }
  {
    Vector lower = lp.lower.size() ? lp.lower : Vector::Zero(nv);
    Vector upper = lp.upper.size() ? lp.upper : Vector::Constant(nv, kInf);
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(lower[j])) {
        feas = std::max(feas, lower[j] - sol.primal[j]);
      }
      if (std::isfinite(upper[j])) {
        feas = std::max(feas, sol.primal[j] - upper[j]);
      }
    }
  }
  sol.feasibility_residual = feas;
  if (feas > kFeasTol) {
    throw NumericalFailure("simplex finished with feasibility residual " +
                           std::to_string(feas));
  }
  if (sol.complementarity_residual > kComplTol) {
    throw NumericalFailure("simplex finished with complementarity residual " +
                           std::to_string(sol.complementarity_residual));
  }
  return sol;
}

}  // namespace eot
