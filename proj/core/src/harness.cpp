#include "shellbend/harness.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "shellbend/errors.hpp"
#include "shellbend/rng.hpp"

namespace shellbend {

namespace {

struct MeasureField {
    const char* name;
    Mat2 MeasureSet::* field;
};

constexpr std::array<MeasureField, 5> kMeasureFields = {{
    {"ktilde", &MeasureSet::k_tilde},
    {"kcheck", &MeasureSet::k_check},
    {"kbar", &MeasureSet::k_bar},
    {"ktilde_mod", &MeasureSet::k_tilde_mod},
    {"kcheck_mod", &MeasureSet::k_check_mod},
}};

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ExprPtr power_of(int index, int exponent) {
    ExprPtr v = make_variable(index);
    if (exponent == 1) return v;
    return make_binary(BinaryOp::Pow, v, make_number(exponent));
}

/// z = sum_{i+j<=3} c_ij xi1^i xi2^j with bounded coefficients.
ExprPtr random_polynomial(SplitMix64& rng, const Range& coeff) {
    ExprPtr acc;
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
            const double c = rng.uniform(coeff.lo, coeff.hi);
            ExprPtr term = make_number(c);
            if (i > 0) term = make_binary(BinaryOp::Mul, term, power_of(1, i));
            if (j > 0) term = make_binary(BinaryOp::Mul, term, power_of(2, j));
            acc = acc ? make_binary(BinaryOp::Add, acc, term) : term;
        }
    }
    return acc;
}

/// z = amp * sin(p xi1 + phase1) * cos(q xi2 + phase2).
ExprPtr random_trig(SplitMix64& rng, const SurfaceFamily& family) {
    const double amp = rng.uniform(family.amplitude.lo, family.amplitude.hi);
    const double p = rng.uniform(family.frequency.lo, family.frequency.hi);
    const double q = rng.uniform(family.frequency.lo, family.frequency.hi);
    const double phase1 = rng.uniform(0.0, 2.0 * M_PI);
    const double phase2 = rng.uniform(0.0, 2.0 * M_PI);
    ExprPtr arg1 = make_binary(BinaryOp::Add,
                               make_binary(BinaryOp::Mul, make_number(p), make_variable(1)),
                               make_number(phase1));
    ExprPtr arg2 = make_binary(BinaryOp::Add,
                               make_binary(BinaryOp::Mul, make_number(q), make_variable(2)),
                               make_number(phase2));
    return make_binary(BinaryOp::Mul, make_number(amp),
                       make_binary(BinaryOp::Mul, make_call(FuncKind::Sin, arg1),
                                   make_call(FuncKind::Cos, arg2)));
}

SurfaceExpr graph_surface(ExprPtr height, const ParamDomain& domain) {
    return SurfaceExpr::from_asts({make_variable(1), make_variable(2), std::move(height)}, {},
                                  domain);
}

bool immersed_on_coarse_grid(const SurfaceExpr& s) {
    const GridSpec coarse{5, 5, 0.1};
    for (const Vec2& xi : interior_grid(s.domain(), coarse)) {
        try {
            point_geometry(s, xi);
        } catch (const DegenerateImmersion&) {
            return false;
        }
    }
    return true;
}

SurfacePair sample_pair(SplitMix64& rng, const SurfaceFamily& family) {
    switch (family.kind) {
    case FamilyKind::GraphPolynomial: {
        ExprPtr zr = random_polynomial(rng, family.coeff);
        ExprPtr zd = random_polynomial(rng, family.coeff);
        return {graph_surface(std::move(zr), family.domain),
                graph_surface(std::move(zd), family.domain), ""};
    }
    case FamilyKind::GraphTrigonometric: {
        ExprPtr zr = random_trig(rng, family);
        ExprPtr zd = random_trig(rng, family);
        return {graph_surface(std::move(zr), family.domain),
                graph_surface(std::move(zd), family.domain), ""};
    }
    case FamilyKind::CylinderRoll: {
        const double radius = rng.uniform(family.radius.lo, family.radius.hi);
        return {plane_surface(family.domain), cylinder_roll_surface(radius, family.domain), ""};
    }
    case FamilyKind::SphereChart: {
        const double radius = rng.uniform(family.radius.lo, family.radius.hi);
        const double a = rng.uniform(family.dilation.lo, family.dilation.hi);
        SurfaceExpr ref = sphere_chart_surface(radius, family.domain);
        SurfaceExpr def = scale_surface(ref, a);
        return {std::move(ref), std::move(def), ""};
    }
    case FamilyKind::UserConfig:
        break;
    }
    throw Error("user-config family carries explicit surfaces and cannot be sampled");
}

} // namespace

const char* family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::GraphPolynomial: return "graph-polynomial";
    case FamilyKind::GraphTrigonometric: return "graph-trigonometric";
    case FamilyKind::CylinderRoll: return "cylinder-roll";
    case FamilyKind::SphereChart: return "sphere-chart";
    case FamilyKind::UserConfig: return "user-config";
    }
    return "?";
}

std::optional<FamilyKind> family_from_name(std::string_view name) {
    for (FamilyKind kind :
         {FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric, FamilyKind::CylinderRoll,
          FamilyKind::SphereChart, FamilyKind::UserConfig})
        if (name == family_name(kind)) return kind;
    return std::nullopt;
}

const std::vector<FamilyKind>& builtin_families() {
    static const std::vector<FamilyKind> kinds = {
        FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric, FamilyKind::CylinderRoll,
        FamilyKind::SphereChart};
    return kinds;
}

SurfaceFamily SurfaceFamily::builtin(FamilyKind kind) {
    SurfaceFamily f;
    f.kind = kind;
    switch (kind) {
    case FamilyKind::SphereChart:
        f.radius = {0.8, 2.0};
        f.domain = {-0.6, 0.6, -0.6, 0.6}; // stays clear of the chart poles
        break;
    case FamilyKind::CylinderRoll:
        f.radius = {1.0, 5.0};
        break;
    default:
        break;
    }
    return f;
}

SurfaceExpr plane_surface(const ParamDomain& domain) {
    return SurfaceExpr::from_asts({make_variable(1), make_variable(2), make_number(0.0)}, {},
                                  domain);
}

SurfaceExpr cylinder_roll_surface(double radius, const ParamDomain& domain) {
    return SurfaceExpr::parse({"R*sin(xi1/R)", "xi2", "R - R*cos(xi1/R)"}, {{"R", radius}},
                              domain);
}

SurfaceExpr sphere_chart_surface(double radius, const ParamDomain& domain) {
    return SurfaceExpr::parse({"R*cos(xi1)*cos(xi2)", "R*sin(xi1)*cos(xi2)", "R*sin(xi2)"},
                              {{"R", radius}}, domain);
}

SurfacePair random_surface_pair(std::uint64_t seed, const SurfaceFamily& family) {
    if (family.kind == FamilyKind::UserConfig)
        throw Error("user-config family carries explicit surfaces and cannot be sampled");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 50; ++attempt) {
        SurfacePair pair = sample_pair(rng, family);
        if (immersed_on_coarse_grid(pair.reference) && immersed_on_coarse_grid(pair.deformed)) {
            std::ostringstream os;
            os << family_name(family.kind) << " seed " << seed;
            pair.descriptor = os.str();
            return pair;
        }
    }
    throw FamilyExhausted(std::string("no immersed sample from family ") +
                          family_name(family.kind) + " within 50 attempts");
}

std::vector<Vec2> interior_grid(const ParamDomain& domain, const GridSpec& grid) {
    if (grid.n1 < 2 || grid.n2 < 2)
        throw Error("grid resolution must be at least 2x2");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(grid.n1) * static_cast<std::size_t>(grid.n2));
    const double len1 = domain.xi1_max - domain.xi1_min;
    const double len2 = domain.xi2_max - domain.xi2_min;
    for (int i = 0; i < grid.n1; ++i) {
        const double f1 = grid.margin + (1.0 - 2.0 * grid.margin) * i / (grid.n1 - 1);
        for (int j = 0; j < grid.n2; ++j) {
            const double f2 = grid.margin + (1.0 - 2.0 * grid.margin) * j / (grid.n2 - 1);
            pts.emplace_back(domain.xi1_min + f1 * len1, domain.xi2_min + f2 * len2);
        }
    }
    return pts;
}

std::vector<CheckReport> check_scaling_law(const SurfacePair& pair,
                                           const std::vector<double>& a_list,
                                           const GridSpec& grid, double tol) {
    if (grid.n1 < 3 || grid.n2 < 3)
        throw Error("scaling check requires an interior grid of at least 3x3");
    for (double a : a_list)
        if (!(a > 0.0))
            throw NonpositiveScale("scale factor must be positive, got " + fmt(a));

    const std::vector<Vec2> pts = interior_grid(pair.reference.domain(), grid);

    std::vector<PointGeometry> ref_geoms;
    std::vector<MeasureSet> base;
    ref_geoms.reserve(pts.size());
    base.reserve(pts.size());
    for (const Vec2& xi : pts) {
        ref_geoms.push_back(point_geometry(pair.reference, xi));
        base.push_back(
            bending_measures(polar_decompose(ref_geoms.back(), point_geometry(pair.deformed, xi))));
    }

    std::vector<CheckReport> reports;
    reports.reserve(a_list.size() * kMeasureFields.size());
    for (double a : a_list) {
        const SurfaceExpr scaled = scale_surface(pair.deformed, a);
        std::array<double, 5> max_diff{};
        std::array<double, 5> base_scale{};
        std::array<WorstCase, 5> worst{};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const MeasureSet actual =
                bending_measures(polar_decompose(ref_geoms[i], point_geometry(scaled, pts[i])));
            const MeasureSet predicted = scaling_transform_law(base[i], a);
            for (std::size_t k = 0; k < kMeasureFields.size(); ++k) {
                const Mat2 diff = actual.*kMeasureFields[k].field - predicted.*kMeasureFields[k].field;
                const double r = max_abs(diff);
                base_scale[k] = std::max(base_scale[k], max_abs(base[i].*kMeasureFields[k].field));
                if (r >= max_diff[k]) {
                    max_diff[k] = r;
                    worst[k] = {pts[i], kMeasureFields[k].name, diff};
                }
            }
        }
        for (std::size_t k = 0; k < kMeasureFields.size(); ++k) {
            CheckReport rep;
            rep.name = std::string("scaling/") + kMeasureFields[k].name + "/a=" + fmt(a);
            rep.pair = pair.descriptor;
            rep.points = static_cast<int>(pts.size());
            rep.max_residual = max_diff[k] / (1.0 + base_scale[k]);
            rep.tolerance = tol;
            rep.pass = rep.max_residual <= tol;
            rep.worst = worst[k];
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

CheckReport check_rigid_nullity(const SurfaceExpr& surface,
                                const std::vector<RigidMotion>& motions, const GridSpec& grid,
                                double tol, std::string_view label) {
    if (motions.empty())
        throw Error("rigid-nullity check requires at least one motion");
    const std::vector<Vec2> pts = interior_grid(surface.domain(), grid);

    CheckReport rep;
    rep.name = std::string("rigid-nullity/") + std::string(label);
    rep.pair = label;
    rep.tolerance = tol;
    rep.points = static_cast<int>(motions.size() * pts.size());
    for (const RigidMotion& motion : motions) {
        const SurfaceExpr moved = rigid_transform_surface(surface, motion);
        for (const Vec2& xi : pts) {
            const MeasureSet ms = bending_measures(
                polar_decompose(point_geometry(surface, xi), point_geometry(moved, xi)));
            for (const MeasureField& f : kMeasureFields) {
                const Mat2& value = ms.*f.field;
                const double r = max_abs(value);
                if (r >= rep.max_residual) {
                    rep.max_residual = r;
                    rep.worst = {xi, f.name, value};
                }
            }
        }
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

CheckReport check_objectivity(const SurfacePair& pair, const std::vector<RigidMotion>& motions,
                              const GridSpec& grid, double tol) {
    if (motions.empty())
        throw Error("objectivity check requires at least one motion");
    const std::vector<Vec2> pts = interior_grid(pair.reference.domain(), grid);

    std::vector<PointGeometry> ref_geoms;
    std::vector<MeasureSet> base;
    ref_geoms.reserve(pts.size());
    base.reserve(pts.size());
    for (const Vec2& xi : pts) {
        ref_geoms.push_back(point_geometry(pair.reference, xi));
        base.push_back(
            bending_measures(polar_decompose(ref_geoms.back(), point_geometry(pair.deformed, xi))));
    }

    CheckReport rep;
    rep.name = "objectivity/" + pair.descriptor;
    rep.pair = pair.descriptor;
    rep.tolerance = tol;
    rep.points = static_cast<int>(motions.size() * pts.size());
    for (const RigidMotion& motion : motions) {
        const SurfaceExpr moved = rigid_transform_surface(pair.deformed, motion);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const MeasureSet ms = bending_measures(
                polar_decompose(ref_geoms[i], point_geometry(moved, pts[i])));
            for (const MeasureField& f : kMeasureFields) {
                const Mat2 diff = ms.*f.field - base[i].*f.field;
                const double r = max_abs(diff);
                if (r >= rep.max_residual) {
                    rep.max_residual = r;
                    rep.worst = {pts[i], f.name, diff};
                }
            }
        }
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

CheckReport check_sphere_dilation(double R, double a, const GridSpec& grid, double tol) {
    if (!(R > 0.0))
        throw Error("sphere radius must be positive");
    if (!(a > 0.0))
        throw NonpositiveScale("dilation factor must be positive, got " + fmt(a));

    const SurfaceFamily family = SurfaceFamily::builtin(FamilyKind::SphereChart);
    const SurfaceExpr ref = sphere_chart_surface(R, family.domain);
    const SurfaceExpr def = scale_surface(ref, a);

    CheckReport rep;
    rep.name = "sphere-dilation/R=" + fmt(R) + "/a=" + fmt(a);
    rep.pair = "sphere chart R=" + fmt(R) + " dilated by " + fmt(a);
    rep.tolerance = tol;
    const std::vector<Vec2> pts = interior_grid(ref.domain(), grid);
    rep.points = static_cast<int>(pts.size());
    for (const Vec2& xi : pts) {
        const MeasureSet ms =
            bending_measures(polar_decompose(point_geometry(ref, xi), point_geometry(def, xi)));
        for (const MeasureField& f : kMeasureFields) {
            const Mat2& value = ms.*f.field;
            const double r = max_abs(value);
            if (r >= rep.max_residual) {
                rep.max_residual = r;
                rep.worst = {xi, f.name, value};
            }
        }
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

} // namespace shellbend
