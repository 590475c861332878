#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace credrect {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row-major block of draws: one row per draw, one column per coordinate.
using SampleBlock = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n observations (rows) by p variables (columns).
using TimeseriesMatrix = Eigen::MatrixXd;

}  // namespace credrect
