#pragma once

#include <Eigen/Dense>

namespace opinionflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultZeroTol = 1e-9;
inline constexpr double kDefaultStabilityTol = 1e-8;

}  // namespace opinionflow
