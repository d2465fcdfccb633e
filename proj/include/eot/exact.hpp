#pragma once

#include <vector>

#include "eot/measures.hpp"
#include "eot/simplex.hpp"
#include "eot/types.hpp"

namespace eot {

/// Exact solution of the equitable transport program
///
///   min over (P_1..P_N) >= 0 with sum_i P_i in Pi(a, b) of max_i <P_i, C_i>
///
/// together with the dual certificate (lambda, f, g) read off the LP
/// multipliers. At the optimum all per-cost values agree with `value` and
/// <f,a> + <g,b> = value (zero duality gap).
struct EotExactResult {
  double value = 0.0;
  std::vector<Matrix> couplings;  // N plans, entrywise >= 0
  Vector lambda;                  // simplex weights from the epigraph rows
  Vector potential_f;             // length n
  Vector potential_g;             // length m
  Vector per_cost_values;         // <P_i, C_i> for each i
};

EotExactResult eot_exact(const Vector& a, const Vector& b,
                         const CostFamily& family);

struct OtExactResult {
  double value = 0.0;
  Matrix plan;
};

/// Kantorovich problem for a single cost matrix.
OtExactResult ot_exact(const Vector& a, const Vector& b, const Matrix& cost);

/// min over coupling families of sum_i <P_i, C_i>; equals the OT value under
/// the entrywise minimum cost.
double utilitarian_exact(const Vector& a, const Vector& b,
                         const CostFamily& family);

/// alpha-Holder integral probability metric over a common support, solved as
/// an LP in (f, u, v):
///
///   max <f, a - b>  s.t.  |f_k - f_l| <= u * D_kl^alpha, |f_k| <= v,
///                         u + v <= 1, u, v >= 0.
///
/// Serves as the independent oracle for eot_exact with the cost pair
/// (2 * indicator, D^alpha).
double dudley_ipm_exact(const Vector& a, const Vector& b, const Matrix& dist,
                        double alpha = 1.0);

}  // namespace eot
