#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shellbend/errors.hpp"
#include "shellbend/run.hpp"

namespace {

using namespace shellbend;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string grid;
    std::string scales;
    long long seed = -1;
    double tol = 0.0;
};

RunConfig load_with_overrides(const CommonFlags& flags) {
    RunConfig cfg = load_config(flags.config_path);
    if (!flags.grid.empty())
        std::tie(cfg.grid_n1, cfg.grid_n2) = parse_grid_spec(flags.grid);
    if (!flags.scales.empty())
        cfg.scales = parse_scale_list(flags.scales);
    if (flags.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.tol > 0.0)
        cfg.tol = flags.tol;
    if (!flags.out_path.empty())
        cfg.out = flags.out_path;
    return cfg;
}

int cmd_eval(const CommonFlags& flags, bool skip_degenerate) {
    RunConfig cfg = load_with_overrides(flags);
    if (skip_degenerate)
        cfg.skip_degenerate = true;
    const std::string path = cfg.out.empty() ? "eval.csv" : cfg.out;

    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    const EvalStats stats = run_eval(cfg, out);
    out.close();
    std::cout << "wrote " << stats.rows_written << " rows to " << path;
    if (stats.rows_skipped > 0)
        std::cout << " (" << stats.rows_skipped << " degenerate points skipped)";
    std::cout << "\n";
    return 0;
}

int cmd_check(const CommonFlags& flags) {
    RunConfig cfg = load_with_overrides(flags);
    const std::string path = cfg.out.empty() ? "report.json" : cfg.out;

    const SuiteReport report = run_check_suite(cfg);

    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    out << report_to_json(report);
    out.close();

    for (const CheckReport& c : report.checks) {
        if (!c.pass)
            std::cout << "FAIL " << c.name << " [" << c.pair << "]: residual " << c.max_residual
                      << " > tol " << c.tolerance << " at xi=(" << c.worst.xi[0] << ", "
                      << c.worst.xi[1] << ") measure " << c.worst.measure << "\n";
    }
    std::cout << report.passed << " passed, " << report.failed << " failed; report " << path
              << "\n";
    return report.failed == 0 ? 0 : 1;
}

int cmd_families() {
    std::cout << "built-in surface families:\n"
              << "  graph-polynomial     graphs z = sum c_ij xi1^i xi2^j, degree <= 3\n"
              << "  graph-trigonometric  graphs z = a sin(p xi1 + s) cos(q xi2 + t)\n"
              << "  cylinder-roll        plane rolled onto a cylinder (isometric)\n"
              << "  sphere-chart         sphere chart paired with its radial dilation\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pointwise bending strain measures for parametric shell mid-surfaces"};
    app.require_subcommand(1);

    CommonFlags flags;
    bool skip_degenerate = false;

    CLI::App* eval = app.add_subcommand("eval", "evaluate the measure fields on a grid to CSV");
    eval->add_option("--config", flags.config_path, "config file")->required();
    eval->add_option("--out", flags.out_path, "output CSV path (default eval.csv)");
    eval->add_option("--grid", flags.grid, "grid resolution NxM");
    eval->add_flag("--skip-degenerate", skip_degenerate,
                   "skip points where the geometry degenerates instead of aborting");

    CLI::App* check = app.add_subcommand("check", "run the invariance check suite, emit JSON");
    check->add_option("--config", flags.config_path, "config file")->required();
    check->add_option("--out", flags.out_path, "output JSON path (default report.json)");
    check->add_option("--grid", flags.grid, "grid resolution NxM");
    check->add_option("--seed", flags.seed, "seed for families and motions");
    check->add_option("--tol", flags.tol, "relative tolerance for the scaling checks");
    check->add_option("--scales", flags.scales, "comma-separated scale factors");

    CLI::App* families = app.add_subcommand("families", "list built-in surface families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(flags, skip_degenerate);
        if (check->parsed()) return cmd_check(flags);
        if (families->parsed()) return cmd_families();
    } catch (const ConfigError& e) {
        std::cerr << "config error [" << e.field << "]: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
