#pragma once

#include <vector>

#include "eot/measures.hpp"
#include "eot/types.hpp"

namespace eot {

/// Regularized dual variables: lambda on the simplex, potentials f and g.
struct DualState {
  Vector lambda;
  Vector f;
  Vector g;
};

/// The entropic problem: marginals, cost family, and a single regularization
/// strength shared by all costs.
struct RegularizedProblem {
  Vector a;
  Vector b;
  CostFamily family;
  double epsilon;

  RegularizedProblem(Vector a_in, Vector b_in, CostFamily family_in,
                     double epsilon_in);

  Index rows() const { return a.size(); }
  Index cols() const { return b.size(); }
  int costs() const { return family.count(); }
};

struct SolveOptions {
  int max_iter = 20000;
  double tol = 1e-9;         // L1 marginal residual of the recovered plans
  double value_tol = 1e-12;  // relative dual change over a 10-iteration window
  int trace_every = 10;
};

struct TraceRow {
  int iteration;
  double dual_value;
  double residual;
};

/// Converged values and diagnostics of an entropic solve. `primal_value`
/// is max_i <P_i, C_i> of the rounded-to-feasible plans, so it always upper
/// bounds the exact LP value; `reg_primal_value` adds the entropy terms of
/// the unrounded plans.
struct SolveReport {
  double dual_value = 0.0;
  double primal_value = 0.0;
  double reg_primal_value = 0.0;
  double marginal_residual = 0.0;
  Vector per_cost_values;
  Vector lambda_final;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
  DualState state;
};

/// Smoothed dual objective
///
///   F(lambda, f, g) = <f,a> + <g,b>
///                     - eps * [log(sum_i <e^{f/eps}, K_i^{lambda_i} e^{g/eps}>) + 1]
///
/// evaluated entirely in the log domain (one shared log-sum-exp over all
/// (i, k, l) of (f_k + g_l - lambda_i C_i[k,l]) / eps).
double objective_value(const DualState& state, const RegularizedProblem& prob);

struct Gradient {
  Vector lambda;  // <P_i, C_i> for the softmax-normalized plans
  Vector f;       // a - row marginals of sum_i P_i
  Vector g;       // b - column marginals of sum_i P_i
};

Gradient objective_gradient(const DualState& state,
                            const RegularizedProblem& prob);

/// Joint smoothness constant max(max_i ||C_i||_inf^2, 2N) / eps.
double lipschitz_constant(const CostFamily& family, double epsilon);

/// Euclidean projection onto the probability simplex, sort-based,
/// O(N log N). Stable sort keeps tie handling deterministic.
Vector simplex_project(const Vector& v);

/// Projected alternating maximization: exact block maximization in f, then
/// g (Sinkhorn-type scaling kept in log domain), then one projected gradient
/// step on lambda with step 1 / (max_i ||C_i||_inf^2 / eps). With N = 1 the
/// lambda step is a no-op and the iteration is exactly Sinkhorn.
SolveReport pam_solve(const RegularizedProblem& prob,
                      const SolveOptions& opts = {});

/// Accelerated projected gradient ascent on (lambda, f, g): momentum
/// (k-2)/(k+1), step 1/L with L from lipschitz_constant, simplex projection
/// on the lambda block only.
SolveReport apga_solve(const RegularizedProblem& prob,
                       const SolveOptions& opts = {});

/// Softmax-normalized plans of a dual state: P_i proportional to
/// exp((f + g^T - lambda_i C_i) / eps), all entries of all plans summing
/// to one.
std::vector<Matrix> recover_primal(const DualState& state,
                                   const RegularizedProblem& prob);

/// Repair approximate couplings so the summed plan has exactly the marginals
/// (a, b): trim rows then columns proportionally across slabs, then add the
/// nonnegative rank-one deficit to one slab -- the cheapest one when a cost
/// family is supplied, slab 0 otherwise.
std::vector<Matrix> round_to_feasible(const std::vector<Matrix>& couplings,
                                      const Vector& a, const Vector& b,
                                      const CostFamily* family = nullptr);

/// Log-domain Sinkhorn for a single cost, sharing the normalized-mass dual
/// of the N = 1 problem. Reference implementation for cross-checks.
SolveReport sinkhorn_baseline(const Vector& a, const Vector& b,
                              const Matrix& cost, double epsilon,
                              const SolveOptions& opts = {});

}  // namespace eot
