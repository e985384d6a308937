#include "shellbend/run.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "shellbend/errors.hpp"
#include "shellbend/rng.hpp"

namespace shellbend {

namespace {

void print_field(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 r(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    return r.next();
}

} // namespace

EvalStats run_eval(const RunConfig& config, std::ostream& out) {
    const SurfaceExpr ref = reference_surface(config);
    const SurfaceExpr def = deformed_surface(config);

    out << "xi1,xi2";
    for (const char* m : {"ktilde", "kcheck", "kbar", "ktilde_mod", "kcheck_mod"})
        for (const char* c : {"_11", "_12", "_21", "_22"})
            out << ',' << m << c;
    out << ",u_norm\n";

    EvalStats stats;
    const ParamDomain& d = config.domain;
    for (int i = 0; i < config.grid_n1; ++i) {
        const double x1 =
            d.xi1_min + (d.xi1_max - d.xi1_min) * i / static_cast<double>(config.grid_n1 - 1);
        for (int j = 0; j < config.grid_n2; ++j) {
            const double x2 =
                d.xi2_min + (d.xi2_max - d.xi2_min) * j / static_cast<double>(config.grid_n2 - 1);
            const Vec2 xi(x1, x2);
            MeasureSet ms;
            try {
                ms = bending_measures(
                    polar_decompose(point_geometry(ref, xi), point_geometry(def, xi)));
            } catch (const DegenerateImmersion&) {
                if (!config.skip_degenerate) throw;
                ++stats.rows_skipped;
                continue;
            } catch (const SingularDeformation&) {
                if (!config.skip_degenerate) throw;
                ++stats.rows_skipped;
                continue;
            }
            print_field(out, x1);
            out << ',';
            print_field(out, x2);
            for (const Mat2* m :
                 {&ms.k_tilde, &ms.k_check, &ms.k_bar, &ms.k_tilde_mod, &ms.k_check_mod})
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        out << ',';
                        print_field(out, (*m)(a, b));
                    }
            out << ',';
            print_field(out, ms.u_norm);
            out << '\n';
            ++stats.rows_written;
        }
    }
    return stats;
}

SuiteReport run_check_suite(const RunConfig& config) {
    SuiteReport report;
    report.version = kVersion;
    report.config = config;

    const GridSpec grid{config.grid_n1, config.grid_n2, 0.1};

    std::vector<RigidMotion> motions;
    motions.reserve(static_cast<std::size_t>(config.motions));
    for (int i = 0; i < config.motions; ++i)
        motions.push_back(random_rigid_motion(mix_seed(config.seed, 0xacc0ull + i)));

    auto append = [&report](std::vector<CheckReport>&& reps) {
        for (auto& r : reps)
            report.checks.push_back(std::move(r));
    };

    // The config pair itself.
    SurfacePair user{reference_surface(config), deformed_surface(config), "config-pair"};
    append(check_scaling_law(user, config.scales, grid, config.tol));
    report.checks.push_back(check_objectivity(user, motions, grid, config.nullity_tol));
    report.checks.push_back(
        check_rigid_nullity(user.reference, motions, grid, config.nullity_tol, "config-reference"));

    // Built-in family sweeps.
    for (std::size_t fi = 0; fi < config.families.size(); ++fi) {
        const auto kind = family_from_name(config.families[fi]);
        if (!kind)
            throw ConfigError("unknown surface family '" + config.families[fi] + "'",
                              "run.families");
        const SurfaceFamily family = SurfaceFamily::builtin(*kind);
        SurfacePair first = random_surface_pair(mix_seed(config.seed, fi * 1000), family);
        for (int p = 0; p < config.pairs_per_family; ++p) {
            SurfacePair pair =
                p == 0 ? first : random_surface_pair(mix_seed(config.seed, fi * 1000 + p), family);
            append(check_scaling_law(pair, config.scales, grid, config.tol));
        }
        report.checks.push_back(check_rigid_nullity(first.reference, motions, grid,
                                                    config.nullity_tol, config.families[fi]));
        report.checks.push_back(check_objectivity(first, motions, grid, config.nullity_tol));
    }

    // Closed-form sphere dilations.
    for (double R : {1.0, 2.0})
        for (double a : {0.5, 2.0})
            report.checks.push_back(check_sphere_dilation(R, a, grid, config.tol));

    for (const CheckReport& c : report.checks)
        (c.pass ? report.passed : report.failed) += 1;
    return report;
}

std::string report_to_json(const SuiteReport& report) {
    using json = nlohmann::ordered_json;

    auto mat = [](const Mat2& m) {
        return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
    };

    json cfg;
    const std::pair<const char*, const SurfaceConfig*> surfaces[] = {
        {"reference", &report.config.reference}, {"deformed", &report.config.deformed}};
    for (const auto& [label, sc] : surfaces) {
        json s;
        s["x1"] = sc->components[0];
        s["x2"] = sc->components[1];
        s["x3"] = sc->components[2];
        s["params"] = json::object();
        for (const auto& [k, v] : sc->params)
            s["params"][k] = v;
        cfg[label] = std::move(s);
    }
    cfg["domain"] = {{"xi1_min", report.config.domain.xi1_min},
                     {"xi1_max", report.config.domain.xi1_max},
                     {"xi2_min", report.config.domain.xi2_min},
                     {"xi2_max", report.config.domain.xi2_max}};
    cfg["run"] = {{"grid", json::array({report.config.grid_n1, report.config.grid_n2})},
                  {"scales", report.config.scales},
                  {"seed", report.config.seed},
                  {"tol", report.config.tol},
                  {"nullity_tol", report.config.nullity_tol},
                  {"families", report.config.families},
                  {"pairs_per_family", report.config.pairs_per_family},
                  {"motions", report.config.motions}};

    json checks = json::array();
    for (const CheckReport& c : report.checks) {
        json j;
        j["name"] = c.name;
        j["pair"] = c.pair;
        j["points"] = c.points;
        j["max_residual"] = c.max_residual;
        j["tolerance"] = c.tolerance;
        j["verdict"] = c.pass ? "pass" : "fail";
        j["worst"] = {{"xi", json::array({c.worst.xi[0], c.worst.xi[1]})},
                      {"measure", c.worst.measure},
                      {"residual", mat(c.worst.residual)}};
        checks.push_back(std::move(j));
    }

    json root;
    root["version"] = report.version;
    root["config"] = std::move(cfg);
    root["checks"] = std::move(checks);
    root["summary"] = {{"passed", report.passed}, {"failed", report.failed}};
    return root.dump(2) + "\n";
}

} // namespace shellbend
