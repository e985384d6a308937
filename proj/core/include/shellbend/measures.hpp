#pragma once

/// The three nonlinear bending strain measures and their two
/// scaling-normalized modifications, in covariant components on the
/// reference dual basis.
///
/// With m the pulled-back deformed curvature (components e_a . n_{,b}) and
/// B the reference curvature (components ref.sff):
///
///   k_tilde = m - U.B                     (scales with the deformed surface)
///   k_check = m - sym(U.B)                (scales likewise)
///   k_bar   = U^-1 . m - B                (scaling invariant)
///   k_tilde_mod = k_tilde / |U|           (scaling invariant)
///   k_check_mod = k_check / |U|           (scaling invariant)
///
/// All five vanish when the deformed surface is a rigid motion of the
/// reference.

#include "shellbend/kinematics.hpp"

namespace shellbend {

struct MeasureSet {
    Mat2 k_tilde = Mat2::Zero();
    Mat2 k_check = Mat2::Zero();
    Mat2 k_bar = Mat2::Zero();
    Mat2 k_tilde_mod = Mat2::Zero();
    Mat2 k_check_mod = Mat2::Zero();

    /// The normalizer |U| used for the modified measures.
    double u_norm = 0.0;
};

/// m_ab = def.basis_a . def.dnormal_b: the deformed curvature pulled back
/// to reference components. Symmetric up to rounding.
Mat2 pulled_back_curvature(const DeformationState& state);

/// (U.B)_ab = u_cov_ag A^{gd} ref.sff_db with A the reference inverse
/// metric (the stretch applied to the reference curvature).
Mat2 u_dot_B(const DeformationState& state);

/// All five measures at one point. Requires an invertible stretch; the
/// state construction already guarantees that.
MeasureSet bending_measures(const DeformationState& state);

/// Predicted images of the measures when the deformed surface is scaled
/// by a: k_tilde and k_check pick up the factor a, the other three are
/// unchanged. Used as the oracle in the invariance harness. Throws
/// NonpositiveScale when a <= 0.
MeasureSet scaling_transform_law(const MeasureSet& measures, double a);

} // namespace shellbend
