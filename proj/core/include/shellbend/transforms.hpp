#pragma once

/// Symbolic transforms of deformed surfaces: uniform scaling x -> a x and
/// rigid motions x -> Q x + c. Both wrap the component ASTs with
/// numeric-literal coefficients, so transformed surfaces flow through the
/// exact-jet pipeline like any other surface.

#include <cstdint>

#include "shellbend/expr.hpp"

namespace shellbend {

using Mat3 = Eigen::Matrix3d;

struct RigidMotion {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();
};

/// Max-abs residual of Q^T Q - I and |det Q - 1| must both be <= 1e-14.
bool is_valid_rotation(const Mat3& rotation);

/// Multiply every component by the literal a. Throws NonpositiveScale.
SurfaceExpr scale_surface(const SurfaceExpr& s, double a);

/// Components become Q x(xi) + c. Throws InvalidRotation when the motion
/// fails the orthogonality or determinant check.
SurfaceExpr rigid_transform_surface(const SurfaceExpr& s, const RigidMotion& m);

/// Deterministic proper rotation from a seed (normalized quaternion
/// construction); translation is zero. Same seed, same rotation.
RigidMotion random_rotation(std::uint64_t seed);

/// Rotation as above plus a translation with entries in [-1, 1].
RigidMotion random_rigid_motion(std::uint64_t seed);

} // namespace shellbend
