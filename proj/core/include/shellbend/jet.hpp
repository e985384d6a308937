#pragma once

/// Second-order forward-mode jets in two independent variables.
///
/// A Jet2 carries a value together with its exact gradient and Hessian
/// with respect to the surface parameters (xi1, xi2). Arithmetic
/// propagates both derivative levels through the product, quotient and
/// chain rules, so any composite built from Jet2 operations yields
/// machine-accurate first and second partials with no step-size tuning.

#include <cmath>
#include <cstdint>
#include <Eigen/Core>

#include "shellbend/errors.hpp"

namespace shellbend {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

namespace detail {

/// Build a 2x2 matrix with both off-diagonal entries set from the same
/// double, so stored Hessians stay symmetric bitwise.
inline Mat2 sym2(double h00, double h01, double h11) {
    Mat2 m;
    m(0, 0) = h00;
    m(0, 1) = h01;
    m(1, 0) = h01;
    m(1, 1) = h11;
    return m;
}

inline constexpr double kDivFloor = 1e-300;

} // namespace detail

struct Jet2 {
    double val = 0.0;
    Vec2 grad = Vec2::Zero();
    Mat2 hess = Mat2::Zero();

    Jet2() = default;

    /// Constant: zero gradient and Hessian.
    explicit Jet2(double v) : val(v) {}

    Jet2(double v, const Vec2& g, const Mat2& h) : val(v), grad(g), hess(h) {}

    /// Seed for the independent variable xi1 (index 1) or xi2 (index 2).
    static Jet2 variable(int index, double value) {
        if (index != 1 && index != 2)
            throw Error("Jet2::variable: index must be 1 or 2");
        Jet2 j(value);
        j.grad[index - 1] = 1.0;
        return j;
    }

    static Jet2 constant(double value) { return Jet2(value); }
};

inline Jet2 operator-(const Jet2& a) {
    return {-a.val, -a.grad, detail::sym2(-a.hess(0, 0), -a.hess(0, 1), -a.hess(1, 1))};
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.val + b.val, a.grad + b.grad,
            detail::sym2(a.hess(0, 0) + b.hess(0, 0), a.hess(0, 1) + b.hess(0, 1),
                         a.hess(1, 1) + b.hess(1, 1))};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.val - b.val, a.grad - b.grad,
            detail::sym2(a.hess(0, 0) - b.hess(0, 0), a.hess(0, 1) - b.hess(0, 1),
                         a.hess(1, 1) - b.hess(1, 1))};
}

/// Full second-order Leibniz rule:
///   hess(ab) = a.hess*b + a.grad (x) b.grad + b.grad (x) a.grad + b.hess*a
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    const double h00 =
        a.hess(0, 0) * b.val + 2.0 * a.grad[0] * b.grad[0] + b.hess(0, 0) * a.val;
    const double h01 = a.hess(0, 1) * b.val + a.grad[0] * b.grad[1] +
                       b.grad[0] * a.grad[1] + b.hess(0, 1) * a.val;
    const double h11 =
        a.hess(1, 1) * b.val + 2.0 * a.grad[1] * b.grad[1] + b.hess(1, 1) * a.val;
    return {a.val * b.val, a.grad * b.val + b.grad * a.val, detail::sym2(h00, h01, h11)};
}

/// Chain rule through a scalar function with known first two derivatives:
///   hess = f''(v) * grad (x) grad + f'(v) * hess
inline Jet2 chain(const Jet2& a, double f, double fp, double fpp) {
    const double h00 = fpp * a.grad[0] * a.grad[0] + fp * a.hess(0, 0);
    const double h01 = fpp * a.grad[0] * a.grad[1] + fp * a.hess(0, 1);
    const double h11 = fpp * a.grad[1] * a.grad[1] + fp * a.hess(1, 1);
    return {f, fp * a.grad, detail::sym2(h00, h01, h11)};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (std::abs(b.val) < detail::kDivFloor)
        throw DivisionByZero("jet division by (near-)zero denominator");
    // a/b = a * (1/b); the reciprocal carries the chain rule of x -> 1/x.
    const double inv = 1.0 / b.val;
    return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet2 operator+(const Jet2& a, double s) { return {a.val + s, a.grad, a.hess}; }
inline Jet2 operator+(double s, const Jet2& a) { return {s + a.val, a.grad, a.hess}; }
inline Jet2 operator-(const Jet2& a, double s) { return {a.val - s, a.grad, a.hess}; }
inline Jet2 operator-(double s, const Jet2& a) { return -a + s; }

inline Jet2 operator*(const Jet2& a, double s) {
    return {a.val * s, a.grad * s,
            detail::sym2(a.hess(0, 0) * s, a.hess(0, 1) * s, a.hess(1, 1) * s)};
}
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }

inline Jet2 operator/(const Jet2& a, double s) {
    if (std::abs(s) < detail::kDivFloor)
        throw DivisionByZero("jet division by (near-)zero denominator");
    return a * (1.0 / s);
}
inline Jet2 operator/(double s, const Jet2& a) { return Jet2(s) / a; }

inline Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.val), c = std::cos(a.val);
    return chain(a, s, c, -s);
}

inline Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.val), c = std::cos(a.val);
    return chain(a, c, -s, -c);
}

inline Jet2 tan(const Jet2& a) {
    const double c = std::cos(a.val);
    if (std::abs(c) < detail::kDivFloor)
        throw DomainError("tan at an odd multiple of pi/2");
    const double t = std::tan(a.val);
    const double sec2 = 1.0 / (c * c);
    return chain(a, t, sec2, 2.0 * t * sec2);
}

inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.val);
    return chain(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (!(a.val > 0.0))
        throw DomainError("log of a non-positive value");
    const double inv = 1.0 / a.val;
    return chain(a, std::log(a.val), inv, -inv * inv);
}

inline Jet2 sqrt(const Jet2& a) {
    if (!(a.val > 0.0))
        throw DomainError("sqrt of a non-positive value");
    const double s = std::sqrt(a.val);
    const double fp = 0.5 / s;
    return chain(a, s, fp, -0.5 * fp / a.val);
}

inline Jet2 sinh(const Jet2& a) {
    const double sh = std::sinh(a.val), ch = std::cosh(a.val);
    return chain(a, sh, ch, sh);
}

inline Jet2 cosh(const Jet2& a) {
    const double sh = std::sinh(a.val), ch = std::cosh(a.val);
    return chain(a, ch, sh, ch);
}

inline Jet2 tanh(const Jet2& a) {
    const double t = std::tanh(a.val);
    const double sech2 = 1.0 - t * t;
    return chain(a, t, sech2, -2.0 * t * sech2);
}

inline Jet2 asin(const Jet2& a) {
    if (!(std::abs(a.val) < 1.0))
        throw DomainError("asin outside (-1, 1)");
    const double w = 1.0 - a.val * a.val;
    const double fp = 1.0 / std::sqrt(w);
    return chain(a, std::asin(a.val), fp, a.val * fp / w);
}

inline Jet2 acos(const Jet2& a) {
    if (!(std::abs(a.val) < 1.0))
        throw DomainError("acos outside (-1, 1)");
    const double w = 1.0 - a.val * a.val;
    const double fp = -1.0 / std::sqrt(w);
    return chain(a, std::acos(a.val), fp, a.val * fp / w);
}

inline Jet2 atan(const Jet2& a) {
    const double w = 1.0 + a.val * a.val;
    const double fp = 1.0 / w;
    return chain(a, std::atan(a.val), fp, -2.0 * a.val * fp * fp);
}

/// Integer power by repeated multiplication (binary exponentiation).
/// Exact Leibniz at every step; valid for any base, negative exponents
/// go through the guarded reciprocal.
inline Jet2 pow(const Jet2& a, long long n) {
    if (n == 0)
        return Jet2(1.0);
    if (n < 0)
        return Jet2(1.0) / pow(a, -n);
    Jet2 acc(1.0);
    Jet2 base = a;
    unsigned long long e = static_cast<unsigned long long>(n);
    while (e > 0) {
        if (e & 1ull)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// General power a^b = exp(b*log a). When the exponent is a constant jet
/// holding an integer, falls back to repeated multiplication so negative
/// bases keep working and folded/unfolded trees agree.
inline Jet2 pow(const Jet2& a, const Jet2& b) {
    const bool const_exp = b.grad.isZero(0.0) && b.hess.isZero(0.0);
    if (const_exp && std::abs(b.val) <= 1e15 && b.val == std::nearbyint(b.val))
        return pow(a, static_cast<long long>(b.val));
    if (!(a.val > 0.0))
        throw DomainError("pow of a non-positive base with a non-integer exponent");
    return exp(b * log(a));
}

} // namespace shellbend
