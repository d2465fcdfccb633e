#include "eot/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eot {

namespace {

void check_marginals(const Vector& a, const Vector& b, Index n, Index m) {
  if (a.size() != n || b.size() != m) {
    throw DimensionError("marginal lengths do not match the cost shape");
  }
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < 0.0) throw InvalidWeight("negative mass in a");
  }
  for (Index j = 0; j < b.size(); ++j) {
    if (b[j] < 0.0) throw InvalidWeight("negative mass in b");
  }
  if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9) {
    throw InvalidWeight("marginals must each sum to one");
  }
}

}  // namespace

EotExactResult eot_exact(const Vector& a, const Vector& b,
                         const CostFamily& family) {
  const Index n = family.rows();
  const Index m = family.cols();
  const int N = family.count();
  check_marginals(a, b, n, m);

  // Variables: x = (t, vec(P_1), ..., vec(P_N)), P_i stored row-major.
  // Rows: n row-marginal equalities, m column-marginal equalities,
  // N epigraph rows <P_i, C_i> - t <= 0.
  const int nm = static_cast<int>(n * m);
  const int nvars = 1 + N * nm;
  auto pvar = [&](int i, Index k, Index l) {
    return 1 + i * nm + static_cast<int>(k * m + l);
  };

  LinearProgram lp;
  lp.objective = Vector::Zero(nvars);
  lp.objective[0] = 1.0;
  lp.lower = Vector::Zero(nvars);
  lp.lower[0] = -std::numeric_limits<double>::infinity();
  lp.upper = Vector::Constant(nvars, std::numeric_limits<double>::infinity());

  for (Index k = 0; k < n; ++k) {
    ConstraintRow r;
    r.rel = Relation::eq;
    r.rhs = a[k];
    for (int i = 0; i < N; ++i) {
      for (Index l = 0; l < m; ++l) {
        r.coeffs.emplace_back(pvar(i, k, l), 1.0);
      }
    }
    lp.add_row(std::move(r));
  }
  for (Index l = 0; l < m; ++l) {
    ConstraintRow r;
    r.rel = Relation::eq;
    r.rhs = b[l];
    for (int i = 0; i < N; ++i) {
      for (Index k = 0; k < n; ++k) {
        r.coeffs.emplace_back(pvar(i, k, l), 1.0);
      }
    }
    lp.add_row(std::move(r));
  }
  for (int i = 0; i < N; ++i) {
    ConstraintRow r;
    r.rel = Relation::le;
    r.rhs = 0.0;
    r.coeffs.emplace_back(0, -1.0);
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < m; ++l) {
        const double c = family[i](k, l);
        if (c != 0.0) {
          r.coeffs.emplace_back(pvar(i, k, l), c);
        }
      }
    }
    lp.add_row(std::move(r));
  }

  ExactSolution sol = lp_solve(lp);
  if (sol.status != SolveStatus::optimal) {
    throw NumericalFailure("equitable transport LP did not reach optimality");
  }

  EotExactResult res;
  res.value = sol.primal[0];
  res.couplings.reserve(static_cast<size_t>(N));
  res.per_cost_values = Vector::Zero(N);
  for (int i = 0; i < N; ++i) {
    Matrix P(n, m);
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < m; ++l) {
        P(k, l) = std::max(0.0, sol.primal[pvar(i, k, l)]);
      }
    }
    res.per_cost_values[i] = (P.array() * family[i].array()).sum();
    res.couplings.push_back(std::move(P));
  }

  res.potential_f = sol.duals.head(n);
  res.potential_g = sol.duals.segment(n, m);
  // Epigraph multipliers are <= 0 for a minimization; lambda = -dual,
  // clamped and renormalized onto the simplex (boundary values are fine).
  Vector lambda = (-sol.duals.tail(N)).cwiseMax(0.0);
  const double s = lambda.sum();
  res.lambda = s > 0.0 ? Vector(lambda / s)
                       : Vector(Vector::Constant(N, 1.0 / N));
  return res;
}

OtExactResult ot_exact(const Vector& a, const Vector& b, const Matrix& cost) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  check_marginals(a, b, n, m);

  const int nvars = static_cast<int>(n * m);
  auto pvar = [&](Index k, Index l) { return static_cast<int>(k * m + l); };

  LinearProgram lp;
  lp.objective = Vector::Zero(nvars);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < m; ++l) {
      lp.objective[pvar(k, l)] = cost(k, l);
    }
  }
  for (Index k = 0; k < n; ++k) {
    ConstraintRow r;
    r.rel = Relation::eq;
    r.rhs = a[k];
    for (Index l = 0; l < m; ++l) {
      r.coeffs.emplace_back(pvar(k, l), 1.0);
    }
    lp.add_row(std::move(r));
  }
  for (Index l = 0; l < m; ++l) {
    ConstraintRow r;
    r.rel = Relation::eq;
    r.rhs = b[l];
    for (Index k = 0; k < n; ++k) {
      r.coeffs.emplace_back(pvar(k, l), 1.0);
    }
    lp.add_row(std::move(r));
  }

  ExactSolution sol = lp_solve(lp);
  if (sol.status != SolveStatus::optimal) {
    throw NumericalFailure("transport LP did not reach optimality");
  }
  OtExactResult res;
  res.plan = Matrix(n, m);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < m; ++l) {
      res.plan(k, l) = std::max(0.0, sol.primal[pvar(k, l)]);
    }
  }
  res.value = (res.plan.array() * cost.array()).sum();
  return res;
}

double utilitarian_exact(const Vector& a, const Vector& b,
                         const CostFamily& family) {
  // Summing per-cost values lets every unit of mass pick its cheapest cost,
  // so the problem collapses to OT under the entrywise minimum.
  Matrix min_cost = family[0];
  for (int i = 1; i < family.count(); ++i) {
    min_cost = min_cost.cwiseMin(family[i]);
  }
  return ot_exact(a, b, min_cost).value;
}

double dudley_ipm_exact(const Vector& a, const Vector& b, const Matrix& dist,
                        double alpha) {
  const Index n = dist.rows();
  if (dist.cols() != n) {
    throw InvalidMetric("distance matrix must be square");
  }
  if (a.size() != n || b.size() != n) {
    throw DimensionError("weights must live on the common support");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("holder exponent must lie in (0, 1]");
  }
  for (Index i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) {
      throw InvalidMetric("distance matrix must have a zero diagonal");
    }
    for (Index j = 0; j < n; ++j) {
      if (dist(i, j) < 0.0) {
        throw InvalidMetric("distances must be nonnegative");
      }
      if (std::abs(dist(i, j) - dist(j, i)) > 1e-12) {
        throw InvalidMetric("distance matrix must be symmetric");
      }
    }
  }

  // Variables: f_0..f_{n-1} free, then u, v >= 0.
  const int fu = static_cast<int>(n);
  const int fv = fu + 1;
  LinearProgram lp;
  lp.maximize = true;
  lp.objective = Vector::Zero(n + 2);
  lp.objective.head(n) = a - b;
  lp.lower = Vector::Zero(n + 2);
  lp.lower.head(n).setConstant(-std::numeric_limits<double>::infinity());
  lp.upper = Vector::Constant(n + 2, std::numeric_limits<double>::infinity());

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = std::pow(dist(i, j), alpha);
      ConstraintRow r1;
      r1.rel = Relation::le;
      r1.rhs = 0.0;
      r1.coeffs = {{static_cast<int>(i), 1.0}, {static_cast<int>(j), -1.0}, {fu, -d}};
      lp.add_row(std::move(r1));
      ConstraintRow r2;
      r2.rel = Relation::le;
      r2.rhs = 0.0;
      r2.coeffs = {{static_cast<int>(j), 1.0}, {static_cast<int>(i), -1.0}, {fu, -d}};
      lp.add_row(std::move(r2));
    }
  }
  for (Index i = 0; i < n; ++i) {
    ConstraintRow r1;
    r1.rel = Relation::le;
    r1.rhs = 0.0;
    r1.coeffs = {{static_cast<int>(i), 1.0}, {fv, -1.0}};
    lp.add_row(std::move(r1));
    ConstraintRow r2;
    r2.rel = Relation::le;
    r2.rhs = 0.0;
    r2.coeffs = {{static_cast<int>(i), -1.0}, {fv, -1.0}};
    lp.add_row(std::move(r2));
  }
  ConstraintRow cap;
  cap.rel = Relation::le;
  cap.rhs = 1.0;
  cap.coeffs = {{fu, 1.0}, {fv, 1.0}};
  lp.add_row(std::move(cap));

  ExactSolution sol = lp_solve(lp);
  if (sol.status != SolveStatus::optimal) {
    throw NumericalFailure("holder IPM LP did not reach optimality");
  }
  return sol.value;
}

}  // namespace eot
