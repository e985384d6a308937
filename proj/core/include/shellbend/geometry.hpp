#pragma once

/// Per-point first/second-order geometry of one parametric surface:
/// convected basis, metric, dual basis, unit normal and its derivatives,
/// and the covariant curvature components basis_a . n_{,b}.

#include <array>

#include "shellbend/expr.hpp"
#include "shellbend/jet.hpp"

namespace shellbend {

struct PointGeometry {
    Vec2 xi = Vec2::Zero();
    Vec3 pos = Vec3::Zero();

    /// Columns are the convected tangent vectors a_alpha = pos_{,alpha}.
    Mat32 basis = Mat32::Zero();

    /// dbasis[k](a,b) = second partial of ambient component k, pos^k_{,ab}.
    std::array<Mat2, 3> dbasis{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

    /// First fundamental form a_ab = basis_a . basis_b and its inverse.
    Mat2 metric = Mat2::Zero();
    Mat2 inv_metric = Mat2::Zero();

    /// Columns are the dual tangent vectors a^alpha = inv_metric^{ab} basis_b.
    Mat32 dual = Mat32::Zero();

    /// Unit normal basis_1 x basis_2 / |basis_1 x basis_2| and its exact
    /// partials n_{,beta} (columns of dnormal).
    Vec3 normal = Vec3::Zero();
    Mat32 dnormal = Mat32::Zero();

    /// Covariant curvature components sff_ab = basis_a . n_{,b}. With this
    /// sign the unit sphere under an outward normal has sff = metric.
    Mat2 sff = Mat2::Zero();
};

/// Evaluate all per-point geometry of `s` at `xi`. The normal derivative is
/// obtained by differentiating the normalized cross product through the
/// jets, so no finite-difference step enters anywhere.
///
/// Throws OutsideParamDomain, or DegenerateImmersion when
/// |basis_1 x basis_2| < 1e-10 * |basis_1| |basis_2|.
PointGeometry point_geometry(const SurfaceExpr& s, const Vec2& xi);

/// Curvature operator with one index raised, inv_metric * sff. Its trace is
/// the sum of the principal curvatures under the stored sign convention.
Mat2 mixed_curvature(const PointGeometry& g);

} // namespace shellbend
