#pragma once

/// Backends for the CLI subcommands: grid evaluation of the measure fields
/// to CSV, and the invariance check suite with its JSON report. Both are
/// deterministic for a fixed config, so identical runs produce identical
/// bytes.

#include <iosfwd>
#include <string>
#include <vector>

#include "shellbend/config.hpp"
#include "shellbend/harness.hpp"

namespace shellbend {

inline constexpr const char* kVersion = "0.1.0";

struct EvalStats {
    int rows_written = 0;
    int rows_skipped = 0;
};

/// Write the CSV field table: header, then one row per grid point
/// (row-major in xi1 then xi2) over the full domain. Columns are xi1, xi2,
/// the four components of each measure, and u_norm, all printed with 17
/// significant digits. With config.skip_degenerate, points where the
/// geometry or the stretch degenerates are dropped and counted; otherwise
/// the error propagates with point attribution.
EvalStats run_eval(const RunConfig& config, std::ostream& out);

struct SuiteReport {
    std::string version;
    RunConfig config;
    std::vector<CheckReport> checks;
    int passed = 0;
    int failed = 0;
};

/// The full check suite for one config: scaling equivariance/invariance,
/// objectivity and rigid nullity on the config pair, the same sweep over
/// each built-in family listed in config.families, and the closed-form
/// sphere dilations.
SuiteReport run_check_suite(const RunConfig& config);

/// Deterministic JSON encoding of the report (byte-identical for equal
/// reports).
std::string report_to_json(const SuiteReport& report);

} // namespace shellbend
