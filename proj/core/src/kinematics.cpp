#include "shellbend/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "shellbend/errors.hpp"

namespace shellbend {

namespace {

constexpr double kEigenRatioFloor = 1e-12;

void require_same_point(const PointGeometry& ref, const PointGeometry& def) {
    if (ref.xi[0] != def.xi[0] || ref.xi[1] != def.xi[1]) {
        std::ostringstream os;
        os << "reference sampled at (" << ref.xi[0] << ", " << ref.xi[1] << ") but deformed at ("
           << def.xi[0] << ", " << def.xi[1] << ")";
        throw MismatchedPoint(os.str());
    }
}

} // namespace

Mat2 pullback_metric(const PointGeometry& ref, const PointGeometry& def) {
    require_same_point(ref, def);
    return def.basis.transpose() * def.basis;
}

DeformationState polar_decompose(const PointGeometry& ref, const PointGeometry& def) {
    DeformationState st;
    st.ref = ref;
    st.def = def;
    st.c_cov = pullback_metric(ref, def);
    st.c_mixed = ref.inv_metric * st.c_cov;

    // Reduce c v = lambda A v to an ordinary symmetric problem with the
    // Cholesky factor of A = L L^T:  M w = lambda w, M = L^-1 c L^-T,
    // v = L^-T w. A-orthonormality of the v_i is then automatic.
    const Mat2& A = ref.metric;
    const double l11 = std::sqrt(A(0, 0));
    const double l21 = A(0, 1) / l11;
    const double l22 = std::sqrt(A(1, 1) - l21 * l21);

    Mat2 Linv;
    Linv << 1.0 / l11, 0.0, -l21 / (l11 * l22), 1.0 / l22;

    Mat2 M = Linv * st.c_cov * Linv.transpose();
    M = 0.5 * (M + M.transpose()).eval();

    const double mid = 0.5 * (M(0, 0) + M(1, 1));
    const double disc = std::hypot(0.5 * (M(0, 0) - M(1, 1)), M(0, 1));
    st.lambda_max = mid + disc;
    st.lambda_min = mid - disc;

    if (!(st.lambda_max > 0.0) || st.lambda_min < kEigenRatioFloor * st.lambda_max) {
        std::ostringstream os;
        os << "deformation gradient is rank-deficient at (" << ref.xi[0] << ", " << ref.xi[1]
           << "): generalized eigenvalues " << st.lambda_min << ", " << st.lambda_max;
        throw SingularDeformation(os.str());
    }

    const double theta = 0.5 * std::atan2(2.0 * M(0, 1), M(0, 0) - M(1, 1));
    const Vec2 w_max(std::cos(theta), std::sin(theta));
    const Vec2 w_min(-w_max[1], w_max[0]);

    const Vec2 v_max = Linv.transpose() * w_max;
    const Vec2 v_min = Linv.transpose() * w_min;
    const Vec2 av_max = A * v_max;
    const Vec2 av_min = A * v_min;

    const double s_max = std::sqrt(st.lambda_max);
    const double s_min = std::sqrt(st.lambda_min);

    st.u_mixed = s_max * v_max * av_max.transpose() + s_min * v_min * av_min.transpose();
    st.u_inv_mixed =
        (1.0 / s_max) * v_max * av_max.transpose() + (1.0 / s_min) * v_min * av_min.transpose();
    st.u_cov = A * st.u_mixed;
    st.u_norm = std::sqrt(st.lambda_max + st.lambda_min);
    st.r_cols = def.basis * st.u_inv_mixed;
    return st;
}

double u_frobenius_norm(const DeformationState& state) {
    return std::sqrt((state.ref.inv_metric * state.c_cov).trace());
}

} // namespace shellbend
