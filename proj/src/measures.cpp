#include "eot/measures.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace eot {

Vector normalize_weights(const Vector& raw) {
  if (raw.size() == 0) {
    throw DegenerateMeasure("empty weight vector");
  }
  double total = 0.0;
  for (Index i = 0; i < raw.size(); ++i) {
    const double w = raw[i];
    if (w < 0.0) {
      throw InvalidWeight("negative weight at index " + std::to_string(i));
    }
    total += w;
  }
  if (total <= 0.0) {
    throw DegenerateMeasure("weights carry no mass");
  }
  Vector out = raw / total;
  for (Index i = 0; i < out.size(); ++i) {
    if (out[i] <= 0.0) {
      throw NotStrictlyPositive("zero weight at index " + std::to_string(i) +
                                " (strict simplex required)");
    }
  }
  // Renormalize once more so the sum is 1 to the last bit we can get.
  out /= out.sum();
  return out;
}

DiscreteMeasure::DiscreteMeasure(Matrix points, Vector weights)
    : points_(std::move(points)), weights_(normalize_weights(weights)) {
  if (points_.rows() != weights_.size()) {
    throw DimensionError("points/weights length mismatch: " +
                         std::to_string(points_.rows()) + " vs " +
                         std::to_string(weights_.size()));
  }
  if (points_.cols() < 1) {
    throw DimensionError("points must have dimension >= 1");
  }
}

DiscreteMeasure DiscreteMeasure::uniform(Matrix points) {
  const Index n = points.rows();
  return DiscreteMeasure(std::move(points), Vector::Constant(n, 1.0));
}

CostSpec CostSpec::euclidean() { return {}; }

CostSpec CostSpec::squared_euclidean() {
  CostSpec s;
  s.kind = Kind::squared_euclidean;
  return s;
}

CostSpec CostSpec::l1_power(double p) {
  if (p <= 0.0) {
    throw InvalidParameter("l1 power must be positive");
  }
  CostSpec s;
  s.kind = Kind::l1_power;
  s.power = p;
  return s;
}

CostSpec CostSpec::scaled_indicator(double scale) {
  if (scale <= 0.0) {
    throw InvalidParameter("indicator scale must be positive");
  }
  CostSpec s;
  s.kind = Kind::scaled_indicator;
  s.scale = scale;
  return s;
}

CostSpec CostSpec::holder_power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("holder exponent must lie in (0, 1]");
  }
  CostSpec s;
  s.kind = Kind::holder_power;
  s.alpha = alpha;
  return s;
}

CostSpec CostSpec::wind(Vector direction, double coefficient) {
  if (direction.norm() > 1.0 + 1e-12) {
    throw InvalidParameter("wind direction must satisfy ||w|| <= 1");
  }
  if (coefficient < 0.0 || coefficient >= 1.0) {
    throw InvalidParameter("wind coefficient must lie in [0, 1)");
  }
  CostSpec s;
  s.kind = Kind::wind;
  s.wind_direction = std::move(direction);
  s.wind_coefficient = coefficient;
  return s;
}

CostSpec CostSpec::explicit_matrix(Matrix m) {
  CostSpec s;
  s.kind = Kind::explicit_matrix;
  s.matrix = std::move(m);
  return s;
}

CostSpec CostSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    parts.push_back(item);
  }
  if (parts.empty()) {
    throw InvalidParameter("empty cost spec");
  }
  const std::string& name = parts[0];
  auto arg = [&](size_t i) -> double {
    if (parts.size() <= i) {
      throw InvalidParameter("cost spec '" + text + "' is missing a parameter");
    }
    return std::stod(parts[i]);
  };
  if (name == "euclidean") return euclidean();
  if (name == "sqeuclidean") return squared_euclidean();
  if (name == "l1pow") return l1_power(arg(1));
  if (name == "indicator") return scaled_indicator(parts.size() > 1 ? arg(1) : 2.0);
  if (name == "holder") return holder_power(arg(1));
  if (name == "wind") {
    const double beta = arg(1);
    if (parts.size() <= 2) {
      throw InvalidParameter("wind spec needs a direction, e.g. wind:0.7:0.3,0.4");
    }
    std::vector<double> coords;
    std::stringstream cs(parts[2]);
    std::string c;
    while (std::getline(cs, c, ',')) {
      coords.push_back(std::stod(c));
    }
    Vector w(static_cast<Index>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i) w[static_cast<Index>(i)] = coords[i];
    return wind(std::move(w), beta);
  }
  throw InvalidParameter("unknown cost spec '" + text + "'");
}

CostFamily::CostFamily(std::vector<Matrix> matrices, CostSign sign)
    : matrices_(std::move(matrices)), sign_(sign) {
  if (matrices_.empty()) {
    throw InvalidParameter("a cost family needs at least one matrix");
  }
  const Index n = matrices_.front().rows();
  const Index m = matrices_.front().cols();
  if (n < 1 || m < 1) {
    throw DimensionError("cost matrices must be nonempty");
  }
  for (const Matrix& c : matrices_) {
    if (c.rows() != n || c.cols() != m) {
      throw DimensionError("cost matrices must share a common shape");
    }
    if (sign_ == CostSign::nonnegative) {
      if ((c.array() < 0.0).any()) {
        throw InvalidParameter("transport cost matrices must be nonnegative");
      }
    } else {
      if ((c.array() >= 0.0).any()) {
        throw InvalidParameter(
            "fair-division cost matrices must be everywhere negative");
      }
    }
  }
}

double CostFamily::max_abs_entry() const {
  double v = 0.0;
  for (const Matrix& c : matrices_) {
    v = std::max(v, c.cwiseAbs().maxCoeff());
  }
  return v;
}

namespace {

double entry_cost(const CostSpec& spec, const Eigen::RowVectorXd& x,
                  const Eigen::RowVectorXd& y) {
  switch (spec.kind) {
    case CostSpec::Kind::euclidean:
      return (y - x).norm();
    case CostSpec::Kind::squared_euclidean:
      return (y - x).squaredNorm();
    case CostSpec::Kind::l1_power:
      return std::pow((y - x).cwiseAbs().sum(), spec.power);
    case CostSpec::Kind::scaled_indicator:
      // Exact coordinate equality defines the zero set.
      return (x.array() == y.array()).all() ? 0.0 : spec.scale;
    case CostSpec::Kind::holder_power:
      return std::pow((y - x).norm(), spec.alpha);
    case CostSpec::Kind::wind: {
      const Eigen::RowVectorXd d = y - x;
      return d.norm() - spec.wind_coefficient * d.dot(spec.wind_direction.transpose());
    }
    case CostSpec::Kind::explicit_matrix:
      break;  // handled by the caller
  }
  throw InvalidParameter("explicit matrices carry their own entries");
}

}  // namespace

Matrix build_cost_matrix(const CostSpec& spec, const Matrix& X, const Matrix& Y) {
  if (spec.kind == CostSpec::Kind::explicit_matrix) {
    return spec.matrix;
  }
  if (X.rows() == 0 || Y.rows() == 0) {
    throw DimensionError("cost matrix needs nonempty point sets");
  }
  if (X.cols() != Y.cols()) {
    throw DimensionError("point clouds must share a dimension");
  }
  if (spec.kind == CostSpec::Kind::holder_power &&
      !(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
    throw InvalidParameter("holder exponent must lie in (0, 1]");
  }
  if (spec.kind == CostSpec::Kind::wind &&
      spec.wind_direction.size() != X.cols()) {
    throw DimensionError("wind direction dimension mismatch");
  }
  Matrix out(X.rows(), Y.rows());
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < Y.rows(); ++j) {
      out(i, j) = entry_cost(spec, X.row(i), Y.row(j));
    }
  }
  return out;
}

Matrix pointwise_min_cost(const CostFamily& family, const Vector& lambda) {
  if (lambda.size() != family.count()) {
    throw DimensionError("lambda length must match the number of costs");
  }
  Matrix out = lambda[0] * family[0];
  for (int i = 1; i < family.count(); ++i) {
    out = out.cwiseMin(lambda[i] * family[i]);
  }
  return out;
}

CostFamily pad_cost_family(const CostFamily& family, int target) {
  const int k = family.count();
  if (k > target) {
    throw InvalidParameter("cannot pad a family of " + std::to_string(k) +
                           " costs down to " + std::to_string(target));
  }
  if (k == target) {
    return family;
  }
  const int copies = target - k + 1;
  std::vector<Matrix> padded;
  padded.reserve(static_cast<size_t>(target));
  for (int i = 0; i + 1 < k; ++i) {
    padded.push_back(family[i]);
  }
  const Matrix scaled = static_cast<double>(copies) * family[k - 1];
  for (int i = 0; i < copies; ++i) {
    padded.push_back(scaled);
  }
  return CostFamily(std::move(padded), family.sign());
}

}  // namespace eot
