#include "shellbend/geometry.hpp"

#include <cmath>
#include <sstream>

#include "shellbend/errors.hpp"

namespace shellbend {

namespace {

// First-order value-plus-gradient pair in (xi1, xi2). The cross product of
// the tangent vectors depends on first derivatives of position, so its own
// first derivatives close over the position Hessians the jets already carry.
struct D1 {
    double v = 0.0;
    Vec2 g = Vec2::Zero();
};

D1 operator+(const D1& a, const D1& b) { return {a.v + b.v, a.g + b.g}; }
D1 operator-(const D1& a, const D1& b) { return {a.v - b.v, a.g - b.g}; }
D1 operator*(const D1& a, const D1& b) { return {a.v * b.v, a.g * b.v + b.g * a.v}; }

D1 sqrt(const D1& a) {
    const double s = std::sqrt(a.v);
    return {s, a.g * (0.5 / s)};
}

D1 operator/(const D1& a, const D1& b) {
    const double inv = 1.0 / b.v;
    return {a.v * inv, (a.g - b.g * (a.v * inv)) * inv};
}

constexpr double kImmersionFloor = 1e-10;

} // namespace

PointGeometry point_geometry(const SurfaceExpr& s, const Vec2& xi) {
    const std::array<Jet2, 3> jets = s.eval(xi);

    PointGeometry g;
    g.xi = xi;
    for (int k = 0; k < 3; ++k) {
        g.pos[k] = jets[static_cast<std::size_t>(k)].val;
        g.basis.row(k) = jets[static_cast<std::size_t>(k)].grad.transpose();
        g.dbasis[static_cast<std::size_t>(k)] = jets[static_cast<std::size_t>(k)].hess;
    }

    g.metric = g.basis.transpose() * g.basis;

    // Tangent vectors as value-gradient pairs; t[a][k] = pos^k_{,a}.
    std::array<std::array<D1, 3>, 2> t;
    for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 3; ++k)
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = {
                g.basis(k, a), g.dbasis[static_cast<std::size_t>(k)].row(a).transpose()};

    const auto& t1 = t[0];
    const auto& t2 = t[1];
    std::array<D1, 3> cross = {t1[1] * t2[2] - t1[2] * t2[1], t1[2] * t2[0] - t1[0] * t2[2],
                               t1[0] * t2[1] - t1[1] * t2[0]};

    const double cross_norm =
        std::sqrt(cross[0].v * cross[0].v + cross[1].v * cross[1].v + cross[2].v * cross[2].v);
    const double b1 = g.basis.col(0).norm();
    const double b2 = g.basis.col(1).norm();
    // "not strictly above the floor" so an exactly-zero tangent (floor 0)
    // still counts as degenerate
    if (!(cross_norm > kImmersionFloor * b1 * b2)) {
        std::ostringstream os;
        os << "surface is not immersed at (" << xi[0] << ", " << xi[1]
           << "): |basis_1 x basis_2| = " << cross_norm;
        throw DegenerateImmersion(os.str());
    }

    const D1 len = sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]);
    for (int k = 0; k < 3; ++k) {
        const D1 nk = cross[static_cast<std::size_t>(k)] / len;
        g.normal[k] = nk.v;
        g.dnormal.row(k) = nk.g.transpose();
    }

    const double det = g.metric(0, 0) * g.metric(1, 1) - g.metric(0, 1) * g.metric(1, 0);
    const double inv_det = 1.0 / det;
    g.inv_metric << g.metric(1, 1) * inv_det, -g.metric(0, 1) * inv_det,
        -g.metric(0, 1) * inv_det, g.metric(0, 0) * inv_det;

    g.dual = g.basis * g.inv_metric;
    g.sff = g.basis.transpose() * g.dnormal;
    return g;
}

Mat2 mixed_curvature(const PointGeometry& g) {
    return g.inv_metric * g.sff;
}

} // namespace shellbend
