#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace sepscope {

// Points are stored one per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace sepscope
