#pragma once

#include <span>
#include <string>
#include <vector>

#include "subdiff/analytics.hpp"
#include "subdiff/cli/config.hpp"

namespace subdiff::cli {

/// Version baked in at build time (project version + git describe).
const char* version();

struct FitRecord {
    std::string series;  // family name
    std::string label;   // fit window label
    analytics::PowerLawFit fit;
};

struct RunResult {
    std::string dir;
    std::vector<std::string> files;  // relative to dir, in write order; excludes the manifest
    std::string manifest;            // relative to dir
    std::vector<FitRecord> fits;
};

// Per-command grid defaults.
inline constexpr Grid kSimulateGrid{0.0, 10.0, 1001, 1e-3};
inline constexpr Grid kEnsembleGrid{1e-2, 10.0, 61, 1e-3};
inline constexpr Grid kTimeAvgGrid{0.0, 1e4, 100'001, 1e-2};
inline constexpr Grid kAnalyticGrid{1e-3, 1e3, 61, 1e-3};

/// Points t_min * (t_max/t_min)^(i/(n-1)), i = 0..n-1, endpoints exact.
std::vector<double> log_grid(double t_min, double t_max, int n);

/// i * t_max/(n-1), i = 0..n-1, last point exactly t_max.
std::vector<double> linear_grid(double t_max, int n);

/// Distinct grid multiples k*h, k in [k_lo, k_hi], about ten per decade.
std::vector<double> lag_grid(double h, long k_lo, long k_hi);

/// One CSV per trajectory (t, S, Y) on a uniform grid over [0, tmax] with ngrid points.
RunResult cmd_simulate(const RunConfig& cfg);

/// msd_<mode>_<family>.csv with columns t,msd[,stderr] and, if cfg.fit, msd_<mode>_<family>_fit.json.
///   ensemble: t = 0 plus a log grid over [tmin, tmax]
///   timeavg:  one trajectory on a uniform grid over [0, tmax]; lags from tmin (default: the grid step)
///             to tmax/1000 or ten grid steps, whichever is longer
///   analytic: log grid over [tmin, tmax]
RunResult cmd_msd(const RunConfig& cfg);

/// kernel_<family>.csv with columns t,M,psi_inv_t,limit; t_list overrides the log grid.
RunResult cmd_kernel(const RunConfig& cfg, std::span<const double> t_list = {});

/// Plot data for Figures 1-4 (cfg.figure, 0 for all) across the three families with the
/// gamma family matched by mean to the tempered stable one.
RunResult cmd_figures(const RunConfig& cfg);

}  // namespace subdiff::cli
