#pragma once

// Helpers shared by the subcommand implementations.

#include <string>
#include <vector>

#include "json.hpp"
#include "subdiff/analytics.hpp"
#include "subdiff/cli/commands.hpp"
#include "subdiff/cli/csv.hpp"
#include "subdiff/subordination.hpp"

namespace subdiff::cli::detail {

using nlohmann::ordered_json;

ordered_json spec_json(const dist::SubordinatorSpec& s);
ordered_json grid_json(const Grid& g);

/// Manifest skeleton: tool, version, command, config echo.
ordered_json begin_manifest(const std::string& command, const RunConfig& cfg);

/// Writes <dir>/manifest_<command>.json listing result.files and sets result.manifest.
void finish_manifest(ordered_json manifest, RunResult& result, const std::string& command);

/// Writes `content` to dir/name and records it in result.files.
void emit(RunResult& result, const std::string& name, const std::string& content);

struct CurveRun {
    analytics::MsdCurve curve;
    std::vector<analytics::FitWindow> windows;
};

/// Ensemble msd on {0} + log grid, trajectories 0..n-1 of cfg.master_seed.
CurveRun ensemble_curve(const dist::SubordinatorSpec& spec, const Grid& g, std::uint64_t n, const RunConfig& cfg);

/// Time-averaged msd of trajectory 0; lags from max(h, t_min) to max(10 h, t_max/1000).
CurveRun timeavg_curve(const dist::SubordinatorSpec& spec, const Grid& g, const RunConfig& cfg);

/// Analytic msd on a log grid.
CurveRun analytic_curve(const dist::SubordinatorSpec& spec, const Grid& g, const RunConfig& cfg);

CsvTable curve_table(const analytics::MsdCurve& curve, bool with_analytic, const dist::SubordinatorSpec& spec);

std::vector<FitRecord> fit_curve(const analytics::MsdCurve& curve, const std::vector<analytics::FitWindow>& windows,
                                 const std::string& series);

ordered_json fits_json(const std::vector<FitRecord>& fits);

/// Fitted lines evaluated at the curve's grid points inside each window: label index, t, value.
CsvTable fit_lines_table(const analytics::MsdCurve& curve, const std::vector<FitRecord>& fits);

}  // namespace subdiff::cli::detail
