#include "subdiff/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "detail.hpp"
#include "subdiff/distributions.hpp"
#include "subdiff/error.hpp"

#ifndef SUBDIFF_VERSION
#define SUBDIFF_VERSION "unknown"
#endif

namespace subdiff::cli {

const char* version() { return SUBDIFF_VERSION; }

std::vector<double> log_grid(double t_min, double t_max, int n) {
    if (!(t_min > 0.0) || !(t_max > t_min) || n < 2) throw DomainError("log_grid: need 0 < t_min < t_max and n >= 2");
    std::vector<double> g(n);
    const double r = std::log(t_max / t_min);
    for (int i = 0; i < n; ++i) g[i] = t_min * std::exp(r * i / (n - 1));
    g.front() = t_min;
    g.back() = t_max;
    return g;
}

std::vector<double> linear_grid(double t_max, int n) {
    if (!(t_max > 0.0) || n < 2) throw DomainError("linear_grid: need t_max > 0 and n >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = t_max * i / (n - 1);
    g.back() = t_max;
    return g;
}

std::vector<double> lag_grid(double h, long k_lo, long k_hi) {
    std::vector<double> lags;
    long prev = 0;
    const double step = std::pow(10.0, 0.1);
    for (double k = static_cast<double>(k_lo); k <= static_cast<double>(k_hi) * (1.0 + 1e-9); k *= step) {
        const long ki = std::lround(k);
        if (ki != prev) lags.push_back(h * static_cast<double>(ki));
        prev = ki;
    }
    if (prev != k_hi) lags.push_back(h * static_cast<double>(k_hi));
    return lags;
}

namespace detail {

ordered_json spec_json(const dist::SubordinatorSpec& s) {
    ordered_json j;
    j["family"] = dist::to_string(s.family);
    switch (s.family) {
        case dist::Family::Stable: j["alpha"] = s.alpha; break;
        case dist::Family::TemperedStable:
            j["alpha"] = s.alpha;
            j["lambda"] = s.lambda;
            j["c"] = s.c;
            break;
        case dist::Family::Gamma:
            j["a"] = s.a;
            j["c"] = s.c;
            break;
    }
    return j;
}

ordered_json grid_json(const Grid& g) {
    return ordered_json{{"tmin", g.t_min}, {"tmax", g.t_max}, {"ngrid", g.n_grid}, {"dtau", g.dtau}};
}

ordered_json begin_manifest(const std::string& command, const RunConfig& cfg) {
    ordered_json m;
    m["tool"] = "subdiff";
    m["version"] = version();
    m["command"] = command;
    m["config"] = ordered_json::parse(to_json(cfg));
    return m;
}

void emit(RunResult& result, const std::string& name, const std::string& content) {
    write_file((std::filesystem::path(result.dir) / name).string(), content);
    result.files.push_back(name);
}

void finish_manifest(ordered_json manifest, RunResult& result, const std::string& command) {
    manifest["files"] = result.files;
    result.manifest = "manifest_" + command + ".json";
    write_file((std::filesystem::path(result.dir) / result.manifest).string(), manifest.dump(2) + "\n");
}

CurveRun ensemble_curve(const dist::SubordinatorSpec& spec, const Grid& g, std::uint64_t n, const RunConfig& cfg) {
    if (n < 2) throw ConfigError("ensemble averages need at least 2 trajectories", "n");
    std::vector<double> grid = {0.0};
    for (double t : log_grid(g.t_min, g.t_max, g.n_grid)) grid.push_back(t);
    const auto ens = sub::simulate_ensemble(spec, grid, g.dtau, n, cfg.master_seed, cfg.workers);
    CurveRun run;
    run.curve = analytics::msd_ensemble(ens, grid);
    run.windows = analytics::default_fit_windows(spec.family, g.t_min, g.t_max);
    return run;
}

CurveRun timeavg_curve(const dist::SubordinatorSpec& spec, const Grid& g, const RunConfig& cfg) {
    const auto grid = linear_grid(g.t_max, g.n_grid);
    const double h = grid[1];
    const long steps = g.n_grid - 1;
    const long k_lo = std::max(1L, std::lround(g.t_min / h));
    const long k_hi = std::max(10L, steps / 1000);
    if (k_hi >= steps) throw ConfigError("time series too short for the lag range; raise ngrid", "ngrid");
    if (k_lo >= k_hi) throw ConfigError("smallest lag must be below " + format_double(h * k_hi), "tmin");
    auto rng = sub::RngPair::for_trajectory(cfg.master_seed, 0);
    const auto tr = sub::simulate_trajectory(spec, grid, g.dtau, rng);
    const auto lags = lag_grid(h, k_lo, k_hi);
    CurveRun run;
    run.curve = analytics::msd_time_avg(tr, lags, g.t_max);
    run.windows = {{"full", lags.front(), lags.back()}};
    return run;
}

CurveRun analytic_curve(const dist::SubordinatorSpec& spec, const Grid& g, const RunConfig&) {
    CurveRun run;
    run.curve = analytics::msd_analytic_curve(spec, log_grid(g.t_min, g.t_max, g.n_grid));
    run.windows = analytics::default_fit_windows(spec.family, g.t_min, g.t_max);
    return run;
}

CsvTable curve_table(const analytics::MsdCurve& curve, bool with_analytic, const dist::SubordinatorSpec& spec) {
    std::vector<std::string> header = {"t", "msd"};
    const bool se = !curve.std_error.empty();
    if (se) header.push_back("stderr");
    if (with_analytic) header.push_back("analytic");
    CsvTable table(header);
    std::vector<double> row;
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
        row = {curve.t_grid[i], curve.values[i]};
        if (se) row.push_back(curve.std_error[i]);
        if (with_analytic) row.push_back(analytics::msd_analytic(spec, curve.t_grid[i]));
        table.add_row(row);
    }
    return table;
}

std::vector<FitRecord> fit_curve(const analytics::MsdCurve& curve, const std::vector<analytics::FitWindow>& windows,
                                 const std::string& series) {
    std::vector<FitRecord> out;
    for (const auto& w : windows) out.push_back({series, w.label, analytics::fit_power_law(curve, w.lo, w.hi)});
    return out;
}

ordered_json fits_json(const std::vector<FitRecord>& fits) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : fits) {
        arr.push_back({{"series", f.series},
                       {"window", f.label},
                       {"t_lo", f.fit.t_lo},
                       {"t_hi", f.fit.t_hi},
                       {"exponent", f.fit.exponent},
                       {"prefactor", std::exp(f.fit.log_prefactor)},
                       {"log_prefactor", f.fit.log_prefactor},
                       {"rms_residual", f.fit.rms_residual},
                       {"n_points", f.fit.n_points}});
    }
    return arr;
}

CsvTable fit_lines_table(const analytics::MsdCurve& curve, const std::vector<FitRecord>& fits) {
    CsvTable table({"window", "t", "fit"});
    for (std::size_t w = 0; w < fits.size(); ++w) {
        const auto& f = fits[w].fit;
        for (double t : curve.t_grid) {
            if (t < f.t_lo * (1.0 - 1e-12) || t > f.t_hi * (1.0 + 1e-12)) continue;
            table.add_row({static_cast<double>(w), t, std::exp(f.log_prefactor + f.exponent * std::log(t))});
        }
    }
    return table;
}

}  // namespace detail

namespace {

std::vector<analytics::FitWindow> user_windows(const RunConfig& cfg, std::vector<analytics::FitWindow> fallback) {
    if (cfg.fit_windows.empty()) return fallback;
    std::vector<analytics::FitWindow> out;
    for (std::size_t i = 0; i < cfg.fit_windows.size(); ++i)
        out.push_back({"w" + std::to_string(i), cfg.fit_windows[i].lo, cfg.fit_windows[i].hi});
    return out;
}

RunResult start(const RunConfig& cfg) {
    validate(cfg);
    RunResult r;
    r.dir = output_dir(cfg);
    std::error_code ec;
    std::filesystem::create_directories(r.dir, ec);
    if (ec) throw IoError("cannot create output directory '" + r.dir + "': " + ec.message());
    return r;
}

}  // namespace

RunResult cmd_simulate(const RunConfig& cfg) {
    RunResult result = start(cfg);
    const auto spec = cfg.spec();
    const Grid g = resolve(cfg, {0.0, kSimulateGrid.t_max, kSimulateGrid.n_grid, kSimulateGrid.dtau});
    const std::uint64_t n = cfg.n_trajectories.value_or(10);
    const auto grid = linear_grid(g.t_max, g.n_grid);
    const auto ens = sub::simulate_ensemble(spec, grid, g.dtau, n, cfg.master_seed, cfg.workers);

    auto manifest = detail::begin_manifest("simulate", cfg);
    manifest["spec"] = detail::spec_json(spec);
    manifest["grid"] = detail::grid_json(g);
    auto& trajs = manifest["trajectories"] = detail::ordered_json::array();
    char name[64];
    for (std::size_t i = 0; i < ens.size(); ++i) {
        CsvTable table({"t", "S", "Y"});
        for (std::size_t k = 0; k < grid.size(); ++k) table.add_row({grid[k], ens[i].s_values[k], ens[i].y_values[k]});
        std::snprintf(name, sizeof name, "traj_%06zu.csv", i);
        detail::emit(result, name, table.text());
        trajs.push_back({{"file", name},
                         {"master_seed", ens[i].seed_info.master_seed},
                         {"clock_stream", ens[i].seed_info.stream_index},
                         {"motion_stream", ens[i].seed_info.stream_index + 1}});
    }
    detail::finish_manifest(std::move(manifest), result, "simulate");
    return result;
}

RunResult cmd_msd(const RunConfig& cfg) {
    RunResult result = start(cfg);
    const auto spec = cfg.spec();
    const std::string family = dist::to_string(spec.family);
    detail::CurveRun run;
    Grid g{};
    std::uint64_t n = 0;
    switch (cfg.mode) {
        case MsdMode::Ensemble:
            g = resolve(cfg, kEnsembleGrid);
            n = cfg.n_trajectories.value_or(1000);
            run = detail::ensemble_curve(spec, g, n, cfg);
            break;
        case MsdMode::TimeAvg: {
            const Grid d = kTimeAvgGrid;
            g = resolve(cfg, {d.t_max / (cfg.n_grid.value_or(d.n_grid) - 1), d.t_max, d.n_grid, d.dtau});
            run = detail::timeavg_curve(spec, g, cfg);
            break;
        }
        case MsdMode::Analytic:
            g = resolve(cfg, kAnalyticGrid);
            run = detail::analytic_curve(spec, g, cfg);
            break;
    }
    const std::string stem = std::string("msd_") + to_string(cfg.mode) + "_" + family;
    detail::emit(result, stem + ".csv", detail::curve_table(run.curve, false, spec).text());

    auto manifest = detail::begin_manifest("msd", cfg);
    manifest["spec"] = detail::spec_json(spec);
    manifest["grid"] = detail::grid_json(g);
    manifest["mode"] = to_string(cfg.mode);
    if (cfg.mode == MsdMode::Ensemble) manifest["trajectories"] = {{"master_seed", cfg.master_seed}, {"count", n}};
    if (cfg.mode == MsdMode::TimeAvg)
        manifest["trajectories"] = {{"master_seed", cfg.master_seed}, {"clock_stream", 0}, {"motion_stream", 1}};
    if (cfg.fit) {
        result.fits = detail::fit_curve(run.curve, user_windows(cfg, run.windows), family);
        detail::ordered_json fj;
        fj["mode"] = to_string(cfg.mode);
        fj["spec"] = detail::spec_json(spec);
        fj["fits"] = detail::fits_json(result.fits);
        detail::emit(result, stem + "_fit.json", fj.dump(2) + "\n");
    }
    detail::finish_manifest(std::move(manifest), result, "msd");
    return result;
}

RunResult cmd_kernel(const RunConfig& cfg, std::span<const double> t_list) {
    RunResult result = start(cfg);
    const auto spec = cfg.spec();
    const Grid g = resolve(cfg, kAnalyticGrid);
    std::vector<double> ts(t_list.begin(), t_list.end());
    if (ts.empty()) ts = log_grid(g.t_min, g.t_max, g.n_grid);
    const double limit = analytics::memory_kernel_limit(spec);
    CsvTable table({"t", "M", "psi_inv_t", "limit"});
    for (double t : ts) {
        if (!(t > 0.0)) throw ConfigError("kernel times must be > 0", "t");
        table.add_row({t, analytics::memory_kernel(spec, t), dist::levy_exponent(spec, 1.0 / t), limit});
    }
    const std::string name = std::string("kernel_") + dist::to_string(spec.family) + ".csv";
    detail::emit(result, name, table.text());
    auto manifest = detail::begin_manifest("kernel", cfg);
    manifest["spec"] = detail::spec_json(spec);
    if (t_list.empty())
        manifest["grid"] = detail::grid_json(g);
    else
        manifest["t"] = ts;
    detail::finish_manifest(std::move(manifest), result, "kernel");
    return result;
}

}  // namespace subdiff::cli
