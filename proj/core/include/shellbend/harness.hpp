#pragma once

/// Randomized property checks certifying the transformation behavior of
/// the bending measures over families of surfaces: scaling equivariance /
/// invariance, rigid-motion nullity, objectivity, and the closed-form
/// sphere-dilation cancellation. Every check is deterministic in its seed
/// and returns a machine-readable report.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shellbend/measures.hpp"
#include "shellbend/transforms.hpp"

namespace shellbend {

enum class FamilyKind { GraphPolynomial, GraphTrigonometric, CylinderRoll, SphereChart, UserConfig };

const char* family_name(FamilyKind kind);
std::optional<FamilyKind> family_from_name(std::string_view name);

/// All built-in, samplable family kinds (user-config excluded).
const std::vector<FamilyKind>& builtin_families();

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct SurfaceFamily {
    FamilyKind kind = FamilyKind::GraphPolynomial;
    ParamDomain domain{-1.0, 1.0, -1.0, 1.0};

    Range coeff{-0.15, 0.15};   // graph-polynomial coefficients (slope budget <= 2)
    Range amplitude{0.05, 0.3}; // graph-trigonometric amplitude
    Range frequency{0.5, 1.5};  // graph-trigonometric frequencies
    Range radius{1.0, 5.0};     // cylinder-roll / sphere-chart radius
    Range dilation{0.5, 2.0};   // sphere-chart deformed/reference radius ratio

    static SurfaceFamily builtin(FamilyKind kind);
};

struct SurfacePair {
    SurfaceExpr reference;
    SurfaceExpr deformed;
    std::string descriptor;
};

/// Named analytic surfaces used by the families, the CLI examples and the
/// closed-form oracles.
SurfaceExpr plane_surface(const ParamDomain& domain);
SurfaceExpr cylinder_roll_surface(double radius, const ParamDomain& domain);
SurfaceExpr sphere_chart_surface(double radius, const ParamDomain& domain);

/// Deterministic sample from the family: same seed, same ASTs. Members are
/// verified immersed on a coarse interior grid and resampled on
/// DegenerateImmersion up to 50 attempts (then FamilyExhausted). Throws
/// Error for the user-config kind, which carries explicit surfaces.
SurfacePair random_surface_pair(std::uint64_t seed, const SurfaceFamily& family);

struct GridSpec {
    int n1 = 21;
    int n2 = 21;
    double margin = 0.1; // fraction of the domain kept away from each edge
};

/// Strictly interior sample points, row-major in xi1 then xi2.
std::vector<Vec2> interior_grid(const ParamDomain& domain, const GridSpec& grid);

struct WorstCase {
    Vec2 xi = Vec2::Zero();
    std::string measure;
    Mat2 residual = Mat2::Zero();
};

struct CheckReport {
    std::string name;
    std::string pair;
    int points = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    WorstCase worst;
};

/// One report per measure per scale factor. The residual is the grid-max
/// component deviation from the predicted image under scaling, divided by
/// (1 + grid-max magnitude of the unscaled measure).
std::vector<CheckReport> check_scaling_law(const SurfacePair& pair,
                                           const std::vector<double>& a_list,
                                           const GridSpec& grid, double tol);

/// All five measures must vanish (max-abs below tol) when the deformed
/// surface is a rigid motion of `surface`.
CheckReport check_rigid_nullity(const SurfaceExpr& surface,
                                const std::vector<RigidMotion>& motions, const GridSpec& grid,
                                double tol, std::string_view label);

/// Superposing rigid motions on the deformed surface must leave every
/// measure component unchanged to tol.
CheckReport check_objectivity(const SurfacePair& pair, const std::vector<RigidMotion>& motions,
                              const GridSpec& grid, double tol);

/// Radial dilation of a sphere chart (radius R -> a R) must produce
/// vanishing measures.
CheckReport check_sphere_dilation(double R, double a, const GridSpec& grid, double tol);

} // namespace shellbend
