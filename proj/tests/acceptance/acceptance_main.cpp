// Acceptance suite: executes the toolkit's contract end to end and prints
// one PASS/FAIL line per criterion. Exit status is nonzero when any
// criterion fails.
//
//  1. scaling equivariance of the two stretch-weighted measures
//  2. scaling invariance of the rotation-based measure
//  3. scaling invariance of the |U|-normalized measures
//  4. rigid-motion nullity of all five measures
//  5. objectivity under superposed rigid motions
//  6. polar-decomposition residuals
//  7. analytic oracles (cylinder roll, sphere dilation)
//  8. jet derivatives against central finite differences
//  9. byte-identical JSON reports from repeated check runs

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "shellbend/harness.hpp"
#include "shellbend/rng.hpp"
#include "shellbend/run.hpp"
#include "../support/expr_gen.hpp"
#include "../support/fd.hpp"

using namespace shellbend;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// The shared corpus: 20 seeded pairs, half polynomial, half trigonometric.
const std::vector<SurfacePair>& corpus() {
    static const std::vector<SurfacePair> pairs = [] {
        std::vector<SurfacePair> out;
        SplitMix64 seeds(2024ull);
        for (int i = 0; i < 20; ++i) {
            const FamilyKind kind =
                i % 2 == 0 ? FamilyKind::GraphPolynomial : FamilyKind::GraphTrigonometric;
            out.push_back(random_surface_pair(seeds.next(), SurfaceFamily::builtin(kind)));
        }
        return out;
    }();
    return pairs;
}

const std::vector<RigidMotion>& motions10() {
    static const std::vector<RigidMotion> motions = [] {
        std::vector<RigidMotion> out;
        for (std::uint64_t i = 0; i < 10; ++i)
            out.push_back(random_rigid_motion(515151ull + i));
        return out;
    }();
    return motions;
}

constexpr GridSpec kGrid{21, 21, 0.1};
const std::vector<double> kScales = {0.5, 2.0, 10.0};

// Scaling reports over the corpus, bucketed by measure name.
const std::vector<CheckReport>& scaling_reports() {
    static const std::vector<CheckReport> reports = [] {
        std::vector<CheckReport> out;
        for (const SurfacePair& pair : corpus())
            for (CheckReport& rep : check_scaling_law(pair, kScales, kGrid, 1e-10))
                out.push_back(std::move(rep));
        return out;
    }();
    return reports;
}

Outcome scaling_bucket(const std::vector<std::string>& wanted) {
    double worst = 0.0;
    std::string worst_name;
    int counted = 0;
    bool pass = true;
    for (const CheckReport& rep : scaling_reports()) {
        bool relevant = false;
        for (const std::string& name : wanted)
            relevant = relevant || rep.name.find("/" + name + "/") != std::string::npos;
        if (!relevant) continue;
        ++counted;
        pass = pass && rep.pass;
        if (rep.max_residual > worst) {
            worst = rep.max_residual;
            worst_name = rep.name + " [" + rep.pair + "]";
        }
    }
    Outcome o;
    o.pass = pass && counted > 0;
    o.detail = std::to_string(counted) + " checks over 20 pairs, worst residual " + fmt(worst) +
               " (tol 1e-10)" + (pass ? "" : ", worst at " + worst_name);
    return o;
}

Outcome criterion_scaling_equivariance() { return scaling_bucket({"ktilde", "kcheck"}); }
Outcome criterion_kbar_invariance() { return scaling_bucket({"kbar"}); }
Outcome criterion_modified_invariance() { return scaling_bucket({"ktilde_mod", "kcheck_mod"}); }

Outcome criterion_rigid_nullity() {
    const FamilyKind kinds[3] = {FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric,
                                 FamilyKind::SphereChart};
    double worst = 0.0;
    bool pass = true;
    int points = 0;
    for (int i = 0; i < 3; ++i) {
        const SurfacePair pair =
            random_surface_pair(909090ull + static_cast<std::uint64_t>(i),
                                SurfaceFamily::builtin(kinds[i]));
        const CheckReport rep = check_rigid_nullity(pair.reference, motions10(), kGrid, 1e-11,
                                                    family_name(kinds[i]));
        pass = pass && rep.pass;
        worst = std::max(worst, rep.max_residual);
        points += rep.points;
    }
    return {pass, "10 motions x 3 families, " + std::to_string(points) +
                      " points, worst max-abs " + fmt(worst) + " (tol 1e-11)"};
}

Outcome criterion_objectivity() {
    const FamilyKind kinds[3] = {FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric,
                                 FamilyKind::SphereChart};
    double worst = 0.0;
    bool pass = true;
    for (int i = 0; i < 3; ++i) {
        const SurfacePair pair = random_surface_pair(
            707070ull + static_cast<std::uint64_t>(i), SurfaceFamily::builtin(kinds[i]));
        const CheckReport rep = check_objectivity(pair, motions10(), kGrid, 1e-11);
        pass = pass && rep.pass;
        worst = std::max(worst, rep.max_residual);
    }
    return {pass, "10 motions x 3 pairs, worst component change " + fmt(worst) + " (tol 1e-11)"};
}

Outcome criterion_polar() {
    double worst_recomp = 0.0, worst_isom = 0.0, worst_sym = 0.0, worst_trace = 0.0;
    bool pass = true;
    const GridSpec grid{5, 5, 0.1};
    for (const SurfacePair& pair : corpus()) {
        for (const Vec2& xi : interior_grid(pair.reference.domain(), grid)) {
            const PointGeometry ref = point_geometry(pair.reference, xi);
            const PointGeometry def = point_geometry(pair.deformed, xi);
            const DeformationState st = polar_decompose(ref, def);

            const double recomp = (def.basis - st.r_cols * st.u_mixed).cwiseAbs().maxCoeff() /
                                  def.basis.cwiseAbs().maxCoeff();
            const double isom = max_abs(st.r_cols.transpose() * st.r_cols - ref.metric) /
                                (1.0 + max_abs(ref.metric));
            const double sym =
                max_abs(st.u_cov - st.u_cov.transpose()) / (1.0 + max_abs(st.u_cov));
            const double trace = (st.ref.inv_metric * st.c_cov).trace();
            const double trace_resid = std::abs(st.u_norm * st.u_norm - trace) / trace;

            worst_recomp = std::max(worst_recomp, recomp);
            worst_isom = std::max(worst_isom, isom);
            worst_sym = std::max(worst_sym, sym);
            worst_trace = std::max(worst_trace, trace_resid);
            pass = pass && recomp < 1e-12 && isom < 1e-12 && sym < 1e-12 && trace_resid < 1e-13;
        }
    }
    return {pass, "20 pairs x 25 points: recomposition " + fmt(worst_recomp) + ", r-isometry " +
                      fmt(worst_isom) + ", U-symmetry " + fmt(worst_sym) + " (tol 1e-12), |U|^2 vs trace " +
                      fmt(worst_trace) + " (tol 1e-13)"};
}

Outcome criterion_analytic_oracles() {
    bool pass = true;
    double worst_cyl = 0.0;
    const ParamDomain box{-1.0, 1.0, -1.0, 1.0};
    for (double R : {1.0, 2.0, 5.0}) {
        const SurfaceExpr plane = plane_surface(box);
        const SurfaceExpr cyl = cylinder_roll_surface(R, box);
        for (const Vec2& xi : interior_grid(box, kGrid)) {
            const MeasureSet ms = bending_measures(
                polar_decompose(point_geometry(plane, xi), point_geometry(cyl, xi)));
            const double root2 = std::sqrt(2.0);
            const Mat2* plain[3] = {&ms.k_tilde, &ms.k_check, &ms.k_bar};
            const Mat2* scaled[2] = {&ms.k_tilde_mod, &ms.k_check_mod};
            for (const Mat2* m : plain) {
                worst_cyl = std::max(worst_cyl, std::abs((*m)(0, 0) + 1.0 / R));
                worst_cyl = std::max({worst_cyl, std::abs((*m)(0, 1)), std::abs((*m)(1, 0)),
                                      std::abs((*m)(1, 1))});
            }
            for (const Mat2* m : scaled) {
                worst_cyl = std::max(worst_cyl, std::abs((*m)(0, 0) + 1.0 / (R * root2)));
                worst_cyl = std::max({worst_cyl, std::abs((*m)(0, 1)), std::abs((*m)(1, 0)),
                                      std::abs((*m)(1, 1))});
            }
        }
    }
    pass = pass && worst_cyl < 1e-11;

    double worst_sphere = 0.0;
    for (double R : {1.0, 2.0})
        for (double a : {0.5, 2.0}) {
            const CheckReport rep = check_sphere_dilation(R, a, kGrid, 1e-10);
            pass = pass && rep.pass;
            worst_sphere = std::max(worst_sphere, rep.max_residual);
        }
    return {pass, "cylinder rolls R in {1,2,5}: residual " + fmt(worst_cyl) +
                      " (tol 1e-11); sphere dilations: " + fmt(worst_sphere) + " (tol 1e-10)"};
}

Outcome criterion_jets() {
    SplitMix64 rng(88123ull);
    double worst_grad = 0.0, worst_hess = 0.0;
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const sbtest::FdSample s = sbtest::next_fd_sample(rng);
        const Jet2 j = eval_jet(*s.ast, Jet2::variable(1, s.x), Jet2::variable(2, s.y), {});

        const double g0 = sbtest::rel_err(j.grad[0], s.gx);
        const double g1 = sbtest::rel_err(j.grad[1], s.gy);
        const double h00 = sbtest::rel_err(j.hess(0, 0), s.hxx);
        const double h11 = sbtest::rel_err(j.hess(1, 1), s.hyy);
        const double h01 = sbtest::rel_err(j.hess(0, 1), s.hxy);

        worst_grad = std::max({worst_grad, g0, g1});
        worst_hess = std::max({worst_hess, h00, h11, h01});
        if (g0 >= 1e-5 || g1 >= 1e-5 || h00 >= 1e-3 || h11 >= 1e-3 || h01 >= 1e-3)
            ++failures;
    }
    return {failures == 0, "1000 expressions: worst gradient residual " + fmt(worst_grad) +
                               " (tol 1e-5), worst Hessian residual " + fmt(worst_hess) +
                               " (tol 1e-3)"};
}

Outcome criterion_determinism() {
    const fs::path dir =
        fs::temp_directory_path() / ("shellbend_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "det.cfg";
    {
        std::ofstream out(cfg);
        out << "[reference]\nx1 = xi1\nx2 = xi2\nx3 = 0\n"
            << "[deformed]\nx1 = R*sin(xi1/R)\nx2 = xi2\nx3 = R - R*cos(xi1/R)\nR = 2.0\n"
            << "[domain]\nxi1_min = -1\nxi1_max = 1\nxi2_min = -1\nxi2_max = 1\n"
            << "[run]\ngrid = 9x9\npairs_per_family = 2\nmotions = 4\nseed = 7\n";
    }
    auto run_once = [&](const fs::path& out_path) {
        const std::string cmd = std::string(SHELLBEND_CLI_PATH) + " check --config " +
                                cfg.string() + " --out " + out_path.string() + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        return rc != -1 && WEXITSTATUS(rc) == 0;
    };
    const fs::path r1 = dir / "r1.json";
    const fs::path r2 = dir / "r2.json";
    if (!run_once(r1) || !run_once(r2))
        return {false, "check run did not exit cleanly"};

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const std::string a = slurp(r1);
    const std::string b = slurp(r2);
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (a.empty() || a != b)
        return {false, "reports differ (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + " bytes)"};
    return {true, "two check runs, " + std::to_string(a.size()) + " identical bytes"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"scaling equivariance of ktilde and kcheck", criterion_scaling_equivariance},
        {"scaling invariance of kbar", criterion_kbar_invariance},
        {"scaling invariance of ktilde_mod and kcheck_mod", criterion_modified_invariance},
        {"rigid-motion nullity of all five measures", criterion_rigid_nullity},
        {"objectivity under superposed rigid motions", criterion_objectivity},
        {"polar-decomposition correctness", criterion_polar},
        {"analytic oracles: cylinder roll and sphere dilation", criterion_analytic_oracles},
        {"jet derivatives vs central finite differences", criterion_jets},
        {"byte-identical JSON reports from repeated runs", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failed;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
                  << criteria[i].first << " — " << outcome.detail << "\n";
    }
    if (failed > 0) {
        std::cout << failed << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
