#pragma once

/// Run configuration: a flat structured-text file with [reference],
/// [deformed], [domain] and [run] sections.
///
///   [reference]            three component expressions; any other key is
///   x1 = xi1               a named parameter bound to a real value
///   x2 = xi2
///   x3 = 0
///
///   [deformed]
///   x1 = R*sin(xi1/R)
///   x2 = xi2
///   x3 = R - R*cos(xi1/R)
///   R = 2.0
///
///   [domain]               shared by both surfaces (convected coordinates);
///   xi1_min = -1           a surface section may restate it with
///   xi1_max = 1            "domain = min max min max", which must agree
///   xi2_min = -1
///   xi2_max = 1
///
///   [run]                  all keys optional
///   grid = 21x21
///   scales = 0.5, 2, 10
///   seed = 0
///   tol = 1e-10
///   nullity_tol = 1e-11
///   families = graph-polynomial, graph-trigonometric, sphere-chart
///   pairs_per_family = 5
///   motions = 10
///   out = report.json
///   skip_degenerate = false
///
/// '#' starts a comment. Keys and section names are case-sensitive.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shellbend/expr.hpp"

namespace shellbend {

struct SurfaceConfig {
    std::array<std::string, 3> components; // x1, x2, x3 expression texts
    std::map<std::string, double> params;
};

struct RunConfig {
    SurfaceConfig reference;
    SurfaceConfig deformed;
    ParamDomain domain;

    int grid_n1 = 21;
    int grid_n2 = 21;
    std::vector<double> scales = {0.5, 2.0, 10.0};
    std::uint64_t seed = 0;
    double tol = 1e-10;         // relative, scaling equivariance/invariance
    double nullity_tol = 1e-11; // absolute, nullity and objectivity
    std::vector<std::string> families = {"graph-polynomial", "graph-trigonometric",
                                         "sphere-chart"};
    int pairs_per_family = 5;
    int motions = 10;
    std::string out;
    bool skip_degenerate = false;
};

/// Parse and validate a config file. Every expression must parse and
/// resolve, both surfaces must share one domain, and all [run] values must
/// be in range. Throws ConfigError with the offending field path.
RunConfig load_config(const std::string& path);

/// Same validation applied to config text (used by load_config and tests).
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Build the validated surfaces; both share config.domain.
SurfaceExpr reference_surface(const RunConfig& config);
SurfaceExpr deformed_surface(const RunConfig& config);

/// "NxM" or "N M" or a single "N" (square); throws ConfigError("run.grid").
std::pair<int, int> parse_grid_spec(const std::string& text);

/// Comma/space separated positive reals; throws ConfigError("run.scales").
std::vector<double> parse_scale_list(const std::string& text);

} // namespace shellbend
