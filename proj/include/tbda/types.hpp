#pragma once

#include <Eigen/Dense>

namespace tbda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace tbda
