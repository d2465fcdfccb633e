#pragma once

#include <vector>

#include "eot/errors.hpp"
#include "eot/types.hpp"

namespace eot {

/// Rescale a nonnegative vector onto the strict probability simplex.
///
/// The output is proportional to the input and sums to one within 1e-12.
/// Zero entries are rejected: downstream solvers assume strictly positive
/// atom masses.
Vector normalize_weights(const Vector& raw);

/// A weighted point cloud: sum of weights is one, every weight is strictly
/// positive, and every point lives in the same R^d.
class DiscreteMeasure {
 public:
  /// `points` is n x d (one support point per row), `weights` has length n.
  /// Weights are renormalized once here; construction throws if they cannot
  /// form a strict simplex vector or if d < 1.
  DiscreteMeasure(Matrix points, Vector weights);

  const Matrix& points() const { return points_; }
  const Vector& weights() const { return weights_; }
  Index size() const { return weights_.size(); }
  Index dim() const { return points_.cols(); }

  /// Uniform measure on the given support.
  static DiscreteMeasure uniform(Matrix points);

 private:
  Matrix points_;
  Vector weights_;
};

/// Recipe for building a cost matrix from two point clouds.
struct CostSpec {
  enum class Kind {
    euclidean,         // ||x - y||_2
    squared_euclidean, // ||x - y||_2^2
    l1_power,          // ||x - y||_1^p, p > 0
    scaled_indicator,  // s * 1{x != y}, s > 0 (exact coordinate equality)
    holder_power,      // ||x - y||_2^alpha, alpha in (0, 1]
    wind,              // ||y - x|| - beta * <w, y - x>, ||w|| <= 1, beta < 1
    explicit_matrix,   // caller-provided dense matrix
  };

  Kind kind = Kind::euclidean;
  double power = 1.0;        // p for l1_power
  double scale = 2.0;        // s for scaled_indicator
  double alpha = 1.0;        // exponent for holder_power
  Vector wind_direction;     // w for wind
  double wind_coefficient = 0.7;  // beta for wind
  Matrix matrix;             // payload for explicit_matrix

  static CostSpec euclidean();
  static CostSpec squared_euclidean();
  static CostSpec l1_power(double p);
  static CostSpec scaled_indicator(double s);
  static CostSpec holder_power(double alpha);
  static CostSpec wind(Vector direction, double coefficient);
  static CostSpec explicit_matrix(Matrix m);

  /// Parse a textual spec as used by the CLI, e.g. "euclidean",
  /// "sqeuclidean", "l1pow:1.5", "indicator:2", "holder:0.5",
  /// "wind:0.7:0.3,0.4".
  static CostSpec parse(const std::string& text);
};

/// Sign convention carried by a cost family. Transport problems use
/// nonnegative costs; fair-division problems use everywhere-negative
/// utilities. Mixing signs breaks the equal-cost property at the optimum,
/// so the sign is validated once at construction.
enum class CostSign { nonnegative, negative };

/// N dense cost matrices of a common shape n x m.
class CostFamily {
 public:
  explicit CostFamily(std::vector<Matrix> matrices,
                      CostSign sign = CostSign::nonnegative);

  int count() const { return static_cast<int>(matrices_.size()); }
  Index rows() const { return matrices_.front().rows(); }
  Index cols() const { return matrices_.front().cols(); }
  CostSign sign() const { return sign_; }
  const Matrix& operator[](int i) const { return matrices_[static_cast<size_t>(i)]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  /// max_i of the largest absolute entry.
  double max_abs_entry() const;

 private:
  std::vector<Matrix> matrices_;
  CostSign sign_;
};

/// Evaluate a cost spec on two point clouds (rows are points).
Matrix build_cost_matrix(const CostSpec& spec, const Matrix& X, const Matrix& Y);

/// Entrywise min_i lambda_i * C_i for lambda on the simplex.
Matrix pointwise_min_cost(const CostFamily& family, const Vector& lambda);

/// Extend a family with k costs to exactly `target` costs without changing
/// the transport value: the first k-1 matrices are kept and the last one is
/// replaced by target-k+1 copies of (target-k+1) * C_k.
CostFamily pad_cost_family(const CostFamily& family, int target);

}  // namespace eot
