// subdiff: simulation and analysis of subordinated Brownian motion.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subdiff/cli/commands.hpp"
#include "subdiff/cli/config.hpp"
#include "subdiff/error.hpp"

namespace {

using namespace subdiff;

struct Flags {
    std::string config;
    std::optional<std::string> family, out, mode;
    std::optional<double> alpha, lambda, c, a, tmin, tmax, dtau;
    std::optional<int> ngrid;
    std::optional<std::uint64_t> n, seed;
    std::optional<unsigned> workers;
    std::vector<std::string> fit_windows;
    bool no_fit = false;
    std::vector<double> kernel_t;
    std::optional<int> figure;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "INI config file or a run manifest");
    app->add_option("--family", f.family, "stable | ts | gamma");
    app->add_option("--alpha", f.alpha, "stability index, 0 < alpha < 1");
    app->add_option("--lambda", f.lambda, "tempering parameter (ts)");
    app->add_option("--c", f.c, "ts scale or gamma shape rate (gamma default: mean-matched to ts)");
    app->add_option("--a", f.a, "gamma scale");
    app->add_option("--tmin", f.tmin, "smallest time on log grids");
    app->add_option("--tmax", f.tmax, "largest time");
    app->add_option("--ngrid", f.ngrid, "number of time grid points");
    app->add_option("--dtau", f.dtau, "operational-time step");
    app->add_option("--n", f.n, "number of trajectories");
    app->add_option("--seed", f.seed, "master seed");
    app->add_option("--workers", f.workers, "worker threads (output does not depend on it)");
    app->add_option("--out", f.out, "output directory (default $SUBDIFF_OUTPUT_DIR or ./subdiff_out)");
}

cli::RunConfig build_config(const Flags& f) {
    cli::RunConfig cfg = f.config.empty() ? cli::RunConfig{} : cli::load_config(f.config);
    if (f.family) {
        try {
            cfg.family = dist::parse_family(*f.family);
        } catch (const DomainError&) {
            throw ConfigError("unknown family '" + *f.family + "' (stable, ts, gamma)", "--family");
        }
    }
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.lambda) cfg.lambda = *f.lambda;
    if (f.c) cfg.c = *f.c;
    if (f.a) cfg.a = *f.a;
    if (f.tmin) cfg.t_min = *f.tmin;
    if (f.tmax) cfg.t_max = *f.tmax;
    if (f.ngrid) cfg.n_grid = *f.ngrid;
    if (f.dtau) cfg.dtau = *f.dtau;
    if (f.n) cfg.n_trajectories = *f.n;
    if (f.seed) cfg.master_seed = *f.seed;
    if (f.workers) cfg.workers = *f.workers;
    if (f.out) cfg.output_dir = *f.out;
    if (f.mode) {
        try {
            cfg.mode = cli::parse_msd_mode(*f.mode);
        } catch (const DomainError&) {
            throw ConfigError("unknown mode '" + *f.mode + "' (ensemble, timeavg, analytic)", "--mode");
        }
    }
    if (!f.fit_windows.empty()) {
        cfg.fit_windows.clear();
        for (const auto& w : f.fit_windows) cfg.fit_windows.push_back(cli::parse_fit_window(w, "--fit-window"));
    }
    if (f.no_fit) cfg.fit = false;
    if (f.figure) cfg.figure = *f.figure;
    cli::validate(cfg);
    return cfg;
}

void report(const cli::RunResult& r) {
    std::printf("wrote %zu file(s) to %s (manifest %s)\n", r.files.size(), r.dir.c_str(), r.manifest.c_str());
    for (const auto& fit : r.fits)
        std::printf("  %-14s %-6s exponent %.4f  [%g, %g]  rms %.3g\n", fit.series.c_str(), fit.label.c_str(),
                    fit.fit.exponent, fit.fit.t_lo, fit.fit.t_hi, fit.fit.rms_residual);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subordinated Brownian motion: trajectories, MSD curves, memory kernels, figure data"};
    app.set_version_flag("--version", std::string(cli::version()));
    app.require_subcommand(1);

    Flags f;
    auto* sim = app.add_subcommand("simulate", "write trajectories (t, S, Y) and a manifest");
    add_common(sim, f);

    auto* msd = app.add_subcommand("msd", "ensemble, time-averaged or analytic MSD with power-law fits");
    add_common(msd, f);
    msd->add_option("--mode", f.mode, "ensemble | timeavg | analytic");
    msd->add_option("--fit-window", f.fit_windows, "lo:hi fit window (repeatable)");
    msd->add_flag("--no-fit", f.no_fit, "skip power-law fits");

    auto* ker = app.add_subcommand("kernel", "tabulate the memory kernel M(t)");
    add_common(ker, f);
    ker->add_option("--t", f.kernel_t, "explicit times (overrides the log grid)");

    auto* fig = app.add_subcommand("figures", "plot data for figures 1-4");
    add_common(fig, f);
    fig->add_option("figure", f.figure, "figure id 1-4 (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const auto cfg = build_config(f);
        cli::RunResult r;
        if (sim->parsed()) r = cli::cmd_simulate(cfg);
        if (msd->parsed()) r = cli::cmd_msd(cfg);
        if (ker->parsed()) r = cli::cmd_kernel(cfg, f.kernel_t);
        if (fig->parsed()) r = cli::cmd_figures(cfg);
        report(r);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << (f.config.empty() ? "" : f.config + ": ") << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
