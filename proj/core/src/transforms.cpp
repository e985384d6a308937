#include "shellbend/transforms.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "shellbend/errors.hpp"
#include "shellbend/rng.hpp"

namespace shellbend {

bool is_valid_rotation(const Mat3& rotation) {
    const Mat3 residual = rotation.transpose() * rotation - Mat3::Identity();
    return residual.cwiseAbs().maxCoeff() <= 1e-14 &&
           std::abs(rotation.determinant() - 1.0) <= 1e-14;
}

SurfaceExpr scale_surface(const SurfaceExpr& s, double a) {
    if (!(a > 0.0))
        throw NonpositiveScale("scale factor must be positive, got " + std::to_string(a));
    std::array<ExprPtr, 3> scaled;
    for (int k = 0; k < 3; ++k)
        scaled[static_cast<std::size_t>(k)] =
            make_binary(BinaryOp::Mul, make_number(a), s.component(k));
    return SurfaceExpr::from_asts(std::move(scaled), s.params(), s.domain());
}

SurfaceExpr rigid_transform_surface(const SurfaceExpr& s, const RigidMotion& m) {
    if (!is_valid_rotation(m.rotation))
        throw InvalidRotation("rotation fails the orthogonality/determinant check");
    std::array<ExprPtr, 3> moved;
    for (int i = 0; i < 3; ++i) {
        ExprPtr acc;
        for (int j = 0; j < 3; ++j) {
            ExprPtr term = make_binary(BinaryOp::Mul, make_number(m.rotation(i, j)), s.component(j));
            acc = acc ? make_binary(BinaryOp::Add, acc, term) : term;
        }
        acc = make_binary(BinaryOp::Add, acc, make_number(m.translation[i]));
        moved[static_cast<std::size_t>(i)] = acc;
    }
    return SurfaceExpr::from_asts(std::move(moved), s.params(), s.domain());
}

RigidMotion random_rotation(std::uint64_t seed) {
    SplitMix64 rng(seed);
    double w, x, y, z, n2;
    do {
        w = rng.uniform(-1.0, 1.0);
        x = rng.uniform(-1.0, 1.0);
        y = rng.uniform(-1.0, 1.0);
        z = rng.uniform(-1.0, 1.0);
        n2 = w * w + x * x + y * y + z * z;
    } while (n2 < 1e-4 || n2 > 1.0); // reject outside the unit ball for uniformity
    const double inv = 1.0 / std::sqrt(n2);
    w *= inv;
    x *= inv;
    y *= inv;
    z *= inv;

    RigidMotion m;
    m.rotation << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w),
        2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w),
        2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y);
    return m;
}

RigidMotion random_rigid_motion(std::uint64_t seed) {
    RigidMotion m = random_rotation(seed);
    SplitMix64 rng(seed ^ 0x51a9e5u); // distinct stream for the translation
    m.translation = Vec3(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

} // namespace shellbend
