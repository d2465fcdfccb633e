#pragma once

#include <Eigen/Dense>

namespace eot {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace eot
