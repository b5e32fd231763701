#pragma once

#include <Eigen/Core>

namespace uavris {

template <typename Scalar>
using Position3T = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Vector2T = Eigen::Matrix<Scalar, 2, 1>;

/// A point in meters; z is height above ground.
using Position3 = Position3T<double>;
/// Horizontal (x, y) quantities: gradients, directions, offsets.
using Vector2 = Vector2T<double>;

inline Position3 at_height(const Vector2& xy, double z) { return {xy.x(), xy.y(), z}; }

}  // namespace uavris
