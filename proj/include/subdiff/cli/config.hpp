#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subdiff/distributions.hpp"

namespace subdiff::cli {

enum class MsdMode { Ensemble, TimeAvg, Analytic };

const char* to_string(MsdMode m);
MsdMode parse_msd_mode(std::string_view s);

struct FitWindowSpec {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const FitWindowSpec&) const = default;
};

/// "lo:hi"; throws ConfigError naming `field`.
FitWindowSpec parse_fit_window(std::string_view s, const std::string& field = "fit_window", int line = 0);

/// Settings shared by all subcommands. Grid fields and n left unset take per-command
/// defaults, so a config only records what the user chose.
struct RunConfig {
    dist::Family family = dist::Family::Stable;
    double alpha = 0.6;
    double lambda = 1.0;
    std::optional<double> c;  // TS: 1; gamma: matched to the TS mean with the same alpha, lambda
    double a = 1.0;

    std::optional<double> t_min;
    std::optional<double> t_max;
    std::optional<int> n_grid;
    std::optional<double> dtau;

    std::optional<std::uint64_t> n_trajectories;  // simulate: 10; msd, figures: 1000
    std::uint64_t master_seed = 20240601;
    unsigned workers = 1;
    std::string output_dir;  // empty: SUBDIFF_OUTPUT_DIR, then ./subdiff_out

    // [msd]
    MsdMode mode = MsdMode::Ensemble;
    std::vector<FitWindowSpec> fit_windows;  // empty: default windows
    bool fit = true;

    // [figures]
    int figure = 0;  // 0: all

    bool operator==(const RunConfig&) const = default;

    /// Subordinator described by the model fields.
    dist::SubordinatorSpec spec() const;
};

struct Grid {
    double t_min;
    double t_max;
    int n_grid;
    double dtau;
};

/// Config grid fields, with `defaults` filling those left unset.
Grid resolve(const RunConfig& cfg, const Grid& defaults);

/// Throws ConfigError (field name, no line) for out-of-range values.
void validate(const RunConfig& cfg);

/// INI-style text: [model], [grid], [run], [msd], [figures] sections of key = value lines.
/// Doubles are written with 17 significant digits, so parse_ini(to_ini(c)) == c.
std::string to_ini(const RunConfig& cfg);

/// Throws ConfigError carrying the offending line and key.
RunConfig parse_ini(std::string_view text);

/// JSON object with one member object per INI section, same keys.
std::string to_json(const RunConfig& cfg);
RunConfig from_json(std::string_view text);

/// Reads an INI config or a run manifest (JSON with a "config" object).
RunConfig load_config(const std::string& path);

/// cfg.output_dir, else $SUBDIFF_OUTPUT_DIR, else "subdiff_out".
std::string output_dir(const RunConfig& cfg);

}  // namespace subdiff::cli
