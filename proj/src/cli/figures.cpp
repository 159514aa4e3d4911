#include <cmath>
#include <string>
#include <vector>

#include "detail.hpp"
#include "subdiff/cli/commands.hpp"
#include "subdiff/distributions.hpp"
#include "subdiff/error.hpp"

namespace subdiff::cli {

namespace {

using detail::ordered_json;
using dist::SubordinatorSpec;

struct Families {
    SubordinatorSpec stable;
    SubordinatorSpec ts;
    SubordinatorSpec gamma;

    std::vector<SubordinatorSpec> all() const { return {stable, ts, gamma}; }
};

Families families(const RunConfig& cfg) {
    const double c_ts = cfg.c.value_or(1.0);
    const auto m = analytics::match_gamma_to_ts(cfg.alpha, cfg.lambda, c_ts, cfg.a);
    return {SubordinatorSpec::stable(cfg.alpha), SubordinatorSpec::tempered_stable(cfg.alpha, cfg.lambda, c_ts),
            SubordinatorSpec::gamma(m.a, m.c)};
}

// Ensemble-msd ranges: the stable law is a power law everywhere; the TS crossover sits near
// t = 1/lambda; the gamma large-t regime needs t >> a.
Grid fig3_preset(const SubordinatorSpec& s) {
    switch (s.family) {
        case dist::Family::Stable: return {1e-3, 1e3, 61, 1e-3};
        case dist::Family::TemperedStable: return {1e-3, 1e2, 51, 1e-3};
        case dist::Family::Gamma: return {1e-1, 1e3, 41, 1e-2};
    }
    return kEnsembleGrid;
}

std::vector<double> local_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (y[i] > 0.0 && y[i - 1] > 0.0) out.push_back(std::log(y[i] / y[i - 1]) / std::log(x[i] / x[i - 1]));
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    analytics::MsdCurve c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo * (1.0 - 1e-12) || x[i] > hi * (1.0 + 1e-12)) continue;
        c.t_grid.push_back(x[i]);
        c.values.push_back(y[i]);
    }
    return analytics::fit_power_law(c, c.t_grid.front(), c.t_grid.back()).exponent;
}

void figure1(const Families& f, RunResult& result, ordered_json& manifest) {
    // Stable with sigma = 1; TS and gamma with their own parameters.
    const auto& ts = f.ts;
    const auto& g = f.gamma;
    auto pdfs = [&](double x) {
        return std::vector<double>{x, dist::pdf_stable(f.stable.alpha, 1.0, x),
                                   dist::pdf_tempered_stable(ts.alpha, ts.lambda, ts.c, x), dist::pdf_gamma(g.a, g.c, x)};
    };
    CsvTable body({"x", "stable", "ts", "gamma"});
    for (int i = 1; i <= 500; ++i) body.add_row(pdfs(0.01 * i));
    detail::emit(result, "fig1_pdf.csv", body.text());

    CsvTable tails({"x", "stable", "ts", "gamma"});
    std::vector<double> xs;
    std::vector<double> cols[3];
    for (double x : log_grid(1.0, 1e4, 81)) {
        const auto row = pdfs(x);
        tails.add_row(row);
        xs.push_back(x);
        for (int k = 0; k < 3; ++k) cols[k].push_back(row[k + 1]);
    }
    detail::emit(result, "fig1_tails.csv", tails.text());

    ordered_json summary;
    summary["stable_tail_slope"] = {{"x_lo", 1e2}, {"x_hi", 1e4}, {"slope", loglog_slope(xs, cols[0], 1e2, 1e4)},
                                    {"power_law", -(1.0 + f.stable.alpha)}};
    summary["local_slopes"] = {{"stable", local_slopes(xs, cols[0])},
                               {"ts", local_slopes(xs, cols[1])},
                               {"gamma", local_slopes(xs, cols[2])}};
    detail::emit(result, "fig1_summary.json", summary.dump(2) + "\n");
    manifest["figures"]["1"] = {{"stable", {{"alpha", f.stable.alpha}, {"sigma", 1.0}}},
                                {"ts", detail::spec_json(ts)},
                                {"gamma", detail::spec_json(g)}};
}

void figure2(const Families& f, const RunConfig& cfg, RunResult& result, ordered_json& manifest) {
    const Grid g = resolve(cfg, {0.0, kSimulateGrid.t_max, kSimulateGrid.n_grid, kSimulateGrid.dtau});
    const auto grid = linear_grid(g.t_max, g.n_grid);
    ordered_json entry;
    for (const auto& spec : f.all()) {
        auto rng = sub::RngPair::for_trajectory(cfg.master_seed, 0);
        const auto tr = sub::simulate_trajectory(spec, grid, g.dtau, rng);
        CsvTable table({"t", "S", "Y"});
        for (std::size_t k = 0; k < grid.size(); ++k) table.add_row({grid[k], tr.s_values[k], tr.y_values[k]});
        const std::string name = std::string("fig2_") + dist::to_string(spec.family) + ".csv";
        detail::emit(result, name, table.text());
        entry[dist::to_string(spec.family)] = {{"spec", detail::spec_json(spec)}, {"file", name}};
    }
    manifest["figures"]["2"] = {{"grid", detail::grid_json(g)},
                                {"master_seed", cfg.master_seed},
                                {"clock_stream", 0},
                                {"motion_stream", 1},
                                {"series", entry}};
}

void figure3(const Families& f, const RunConfig& cfg, RunResult& result, ordered_json& manifest) {
    const std::uint64_t n = cfg.n_trajectories.value_or(1000);
    std::vector<FitRecord> all_fits;
    ordered_json entry;
    for (const auto& spec : f.all()) {
        const std::string fam = dist::to_string(spec.family);
        const Grid g = resolve(cfg, fig3_preset(spec));
        const auto run = detail::ensemble_curve(spec, g, n, cfg);
        detail::emit(result, "fig3_" + fam + ".csv", detail::curve_table(run.curve, true, spec).text());
        const auto fits = detail::fit_curve(run.curve, run.windows, fam);
        detail::emit(result, "fig3_" + fam + "_fit.csv", detail::fit_lines_table(run.curve, fits).text());
        all_fits.insert(all_fits.end(), fits.begin(), fits.end());
        entry[fam] = {{"spec", detail::spec_json(spec)}, {"grid", detail::grid_json(g)}};
    }
    detail::emit(result, "fig3_fits.json", detail::fits_json(all_fits).dump(2) + "\n");
    manifest["figures"]["3"] = {{"master_seed", cfg.master_seed}, {"n", n}, {"series", entry}};
    for (auto& r : all_fits) r.series = "fig3:" + r.series;
    result.fits.insert(result.fits.end(), all_fits.begin(), all_fits.end());
}

void figure4(const Families& f, const RunConfig& cfg, RunResult& result, ordered_json& manifest) {
    std::vector<FitRecord> all_fits;
    ordered_json entry;
    const Grid d = kTimeAvgGrid;
    const Grid g = resolve(cfg, {d.t_max / (cfg.n_grid.value_or(d.n_grid) - 1), d.t_max, d.n_grid, d.dtau});
    for (const auto& spec : f.all()) {
        const std::string fam = dist::to_string(spec.family);
        const auto run = detail::timeavg_curve(spec, g, cfg);
        detail::emit(result, "fig4_" + fam + ".csv", detail::curve_table(run.curve, false, spec).text());
        const auto fits = detail::fit_curve(run.curve, run.windows, fam);
        detail::emit(result, "fig4_" + fam + "_fit.csv", detail::fit_lines_table(run.curve, fits).text());
        all_fits.insert(all_fits.end(), fits.begin(), fits.end());
        entry[fam] = detail::spec_json(spec);
    }
    detail::emit(result, "fig4_fits.json", detail::fits_json(all_fits).dump(2) + "\n");
    manifest["figures"]["4"] = {{"grid", detail::grid_json(g)},
                                {"master_seed", cfg.master_seed},
                                {"clock_stream", 0},
                                {"motion_stream", 1},
                                {"series", entry}};
    for (auto& r : all_fits) r.series = "fig4:" + r.series;
    result.fits.insert(result.fits.end(), all_fits.begin(), all_fits.end());
}

}  // namespace

RunResult cmd_figures(const RunConfig& cfg) {
    validate(cfg);
    RunResult result;
    result.dir = output_dir(cfg);
    const Families f = families(cfg);
    auto manifest = detail::begin_manifest("figures", cfg);
    manifest["figures"] = ordered_json::object();
    const int id = cfg.figure;
    if (id == 0 || id == 1) figure1(f, result, manifest);
    if (id == 0 || id == 2) figure2(f, cfg, result, manifest);
    if (id == 0 || id == 3) figure3(f, cfg, result, manifest);
    if (id == 0 || id == 4) figure4(f, cfg, result, manifest);
    detail::finish_manifest(std::move(manifest), result, "figures");
    return result;
}

}  // namespace subdiff::cli
