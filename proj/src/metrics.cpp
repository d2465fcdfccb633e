#include "eot/metrics.hpp"

#include <cmath>

namespace eot {

namespace {

void check_metric(const Matrix& dist) {
  if (dist.rows() != dist.cols()) {
    throw InvalidMetric("distance matrix must be square");
  }
  for (Index i = 0; i < dist.rows(); ++i) {
    if (dist(i, i) != 0.0) {
      throw InvalidMetric("distance matrix must have a zero diagonal");
    }
    for (Index j = 0; j < dist.cols(); ++j) {
      if (dist(i, j) < 0.0) {
        throw InvalidMetric("distances must be nonnegative");
      }
      if (std::abs(dist(i, j) - dist(j, i)) > 1e-12) {
        throw InvalidMetric("distance matrix must be symmetric");
      }
    }
  }
}

// Cost pair of the Holder IPM: 2 * indicator of distinct points (read off
// the distance matrix) and D^alpha.
CostFamily ipm_cost_family(const Matrix& dist, double alpha) {
  Matrix indicator = (dist.array() != 0.0).cast<double>() * 2.0;
  Matrix powered = dist.array().pow(alpha).matrix();
  return CostFamily({std::move(indicator), std::move(powered)});
}

}  // namespace

double dudley(const Vector& a, const Vector& b, const Matrix& dist) {
  return holder_ipm(a, b, dist, 1.0);
}

double holder_ipm(const Vector& a, const Vector& b, const Matrix& dist,
                  double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("holder exponent must lie in (0, 1]");
  }
  check_metric(dist);
  if (a.size() != dist.rows() || b.size() != dist.rows()) {
    throw DimensionError("weights must live on the common support");
  }
  return eot_exact(a, b, ipm_cost_family(dist, alpha)).value;
}

BoundReport harmonic_upper_bound(const Vector& a, const Vector& b,
                                 const CostFamily& family) {
  if (family.sign() != CostSign::nonnegative) {
    throw InvalidParameter("the harmonic bound needs nonnegative costs");
  }
  BoundReport rep;
  rep.per_cost_ot = Vector::Zero(family.count());
  bool any_zero = false;
  double inv_sum = 0.0;
  for (int i = 0; i < family.count(); ++i) {
    const double w = ot_exact(a, b, family[i]).value;
    rep.per_cost_ot[i] = w;
    if (w <= 0.0) {
      any_zero = true;
    } else {
      inv_sum += 1.0 / w;
    }
  }
  rep.min_ot = rep.per_cost_ot.minCoeff();
  rep.harmonic_bound = any_zero ? 0.0 : 1.0 / inv_sum;
  rep.eot_value = eot_exact(a, b, family).value;
  return rep;
}

Vector lambda_star_closed_form(const Vector& x) {
  if (x.size() == 0) {
    throw InvalidParameter("empty input");
  }
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      throw InvalidParameter("entries must be strictly positive");
    }
  }
  Vector inv = x.cwiseInverse();
  return inv / inv.sum();
}

double relative_error(double approx, double truth) {
  if (!(truth > 0.0)) {
    throw InvalidParameter("relative error needs a positive ground truth");
  }
  return (approx - truth) / truth;
}

}  // namespace eot
