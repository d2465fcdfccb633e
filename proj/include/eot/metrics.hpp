#pragma once

#include "eot/exact.hpp"
#include "eot/measures.hpp"
#include "eot/types.hpp"

namespace eot {

/// Per-cost transport values and the harmonic upper bound
/// (sum_i 1/W_i)^{-1}, which sits between the equitable value and
/// min_i W_i.
struct BoundReport {
  double eot_value = 0.0;
  Vector per_cost_ot;
  double harmonic_bound = 0.0;
  double min_ot = 0.0;
};

/// Dudley metric between weights on a common support with distance matrix D:
/// the equitable transport value for the cost pair (2 * indicator, D).
double dudley(const Vector& a, const Vector& b, const Matrix& dist);

/// alpha-Holder IPM: equitable transport with costs (2 * indicator,
/// D^alpha). alpha = 1 recovers the Dudley metric.
double holder_ipm(const Vector& a, const Vector& b, const Matrix& dist,
                  double alpha);

/// Solve every single-cost problem and assemble the harmonic bound; defined
/// as 0 when any W_i vanishes.
BoundReport harmonic_upper_bound(const Vector& a, const Vector& b,
                                 const CostFamily& family);

/// Maximizer of min_i lambda_i x_i over the simplex for positive x:
/// lambda*_i = (1/x_i) / sum_j (1/x_j). All products lambda*_i x_i are equal.
Vector lambda_star_closed_form(const Vector& x);

/// (approx - truth) / truth for positive truth.
double relative_error(double approx, double truth);

}  // namespace eot
