#include "shellbend/measures.hpp"

#include <string>

#include "shellbend/errors.hpp"

namespace shellbend {

Mat2 pulled_back_curvature(const DeformationState& state) {
    return state.def.basis.transpose() * state.def.dnormal;
}

Mat2 u_dot_B(const DeformationState& state) {
    return state.u_cov * state.ref.inv_metric * state.ref.sff;
}

MeasureSet bending_measures(const DeformationState& state) {
    const Mat2 m = pulled_back_curvature(state);
    const Mat2 ub = u_dot_B(state);

    MeasureSet out;
    out.k_tilde = m - ub;
    out.k_check = m - 0.5 * (ub + ub.transpose());
    // (r^T . b . f)_ab = (U^-1)^g_a m_gb
    out.k_bar = state.u_inv_mixed.transpose() * m - state.ref.sff;
    out.u_norm = state.u_norm;
    out.k_tilde_mod = out.k_tilde / out.u_norm;
    out.k_check_mod = out.k_check / out.u_norm;
    return out;
}

MeasureSet scaling_transform_law(const MeasureSet& measures, double a) {
    if (!(a > 0.0))
        throw NonpositiveScale("scale factor must be positive, got " + std::to_string(a));
    MeasureSet out;
    out.k_tilde = a * measures.k_tilde;
    out.k_check = a * measures.k_check;
    out.k_bar = measures.k_bar;
    out.k_tilde_mod = measures.k_tilde_mod;
    out.k_check_mod = measures.k_check_mod;
    out.u_norm = a * measures.u_norm;
    return out;
}

} // namespace shellbend
