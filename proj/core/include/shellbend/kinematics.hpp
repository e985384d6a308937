#pragma once

/// Pairwise (reference, deformed) kinematics at one material point: the
/// pullback metric c_ab = e_a . e_b, the right polar decomposition of the
/// tangent map into a stretch U on the reference tangent plane and an
/// isometry r, and the Frobenius norm |U|.
///
/// U is obtained from the generalized symmetric eigenproblem
/// c_cov v = lambda ref.metric v, which keeps U exactly symmetric with
/// respect to the reference metric. Tangent tensors are stored as 2x2
/// component matrices in the convected bases; r is represented through its
/// action on the reference basis only (two ambient columns).

#include "shellbend/geometry.hpp"

namespace shellbend {

struct DeformationState {
    PointGeometry ref;
    PointGeometry def;

    /// Covariant components of the right Cauchy-Green operator,
    /// c_ab = def.basis_a . def.basis_b.
    Mat2 c_cov = Mat2::Zero();

    /// One index raised with the reference metric: inv_metric * c_cov.
    Mat2 c_mixed = Mat2::Zero();

    /// Mixed components of the stretch U and its inverse; u_mixed squares
    /// to c_mixed.
    Mat2 u_mixed = Mat2::Zero();
    Mat2 u_inv_mixed = Mat2::Zero();

    /// Covariant components ref.metric * u_mixed (symmetric).
    Mat2 u_cov = Mat2::Zero();

    /// |U| = sqrt(U:U) = sqrt(tr(f^T f)) = sqrt(lambda_1 + lambda_2).
    double u_norm = 0.0;

    /// Columns are the ambient vectors r . E_alpha.
    Mat32 r_cols = Mat32::Zero();

    /// Generalized eigenvalues (squared principal stretches), ascending.
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// c_ab = def.basis_a . def.basis_b at the shared coordinate point.
/// Throws MismatchedPoint when the two geometries were sampled at
/// different xi.
Mat2 pullback_metric(const PointGeometry& ref, const PointGeometry& def);

/// Full polar decomposition state. Throws SingularDeformation when the
/// smaller generalized eigenvalue drops below 1e-12 times the larger
/// (locally rank-deficient tangent map), and MismatchedPoint as above.
DeformationState polar_decompose(const PointGeometry& ref, const PointGeometry& def);

/// |U| recomputed directly from the trace formula c_ab A^{ab}; a second
/// algebraic route to the stored u_norm.
double u_frobenius_norm(const DeformationState& state);

} // namespace shellbend
