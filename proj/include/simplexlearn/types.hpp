#pragma once

#include <Eigen/Dense>

#include <vector>

namespace simplexlearn {

// Largest supported ambient dimension. Every dense object below is backed by
// fixed-capacity storage so geometry never touches the heap.
inline constexpr int kMaxDim = 8;

using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Weights = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim + 1, 1>;
using VertexMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim + 1>;
using SquareMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

using PointSet = std::vector<Point>;

void check_dimension(int dim);

}  // namespace simplexlearn
