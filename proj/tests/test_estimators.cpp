#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "subdiff/analytics.hpp"
#include "subdiff/error.hpp"
#include "subdiff/subordination.hpp"

using namespace subdiff;
using namespace subdiff::analytics;
using dist::SubordinatorSpec;

namespace {

sub::Trajectory make_trajectory(std::vector<double> t, std::vector<double> y) {
    sub::Trajectory tr;
    tr.t_grid = std::move(t);
    tr.s_values = tr.t_grid;
    tr.y_values = std::move(y);
    return tr;
}

std::vector<double> uniform(double h, int n) {
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = h * i;
    return g;
}

// Grid multiples of h, roughly log-spaced over [h k_lo, h k_hi].
std::vector<double> log_lags(double h, int k_lo, int k_hi, int per_decade) {
    std::vector<double> lags;
    long prev = 0;
    for (double k = k_lo; k <= k_hi * 1.0000001; k *= std::pow(10.0, 1.0 / per_decade)) {
        const long ki = std::lround(k);
        if (ki != prev) lags.push_back(h * static_cast<double>(ki));
        prev = ki;
    }
    return lags;
}

}  // namespace

TEST_CASE("fit_power_law: exact power laws") {
    MsdCurve c;
    for (double t = 0.01; t <= 100.0; t *= 1.5) {
        c.t_grid.push_back(t);
        c.values.push_back(3.0 * t * t);
    }
    const auto fit = fit_power_law(c, 0.01, 100.0);
    CHECK(std::abs(fit.exponent - 2.0) < 1e-10);
    CHECK(std::abs(fit.log_prefactor - std::log(3.0)) < 1e-10);
    CHECK(fit.rms_residual < 1e-12);
    CHECK(fit.n_points == c.t_grid.size());

    for (double p : {-1.3, 0.25, 0.6, 1.0, 4.0}) {
        MsdCurve d;
        for (double t = 1e-3; t <= 1e3; t *= 2.0) {
            d.t_grid.push_back(t);
            d.values.push_back(0.7 * std::pow(t, p));
        }
        CHECK(std::abs(fit_power_law(d, 1e-3, 1e3).exponent - p) < 1e-10);
        // Window restriction.
        const auto w = fit_power_law(d, 0.1, 10.0);
        CHECK(w.t_lo == 0.1);
        CHECK(w.t_hi == 10.0);
        CHECK(w.n_points == 7);
    }
}

TEST_CASE("fit_power_law: analytic curves") {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(1e-3 * std::pow(10.0, i / 10.0));
    const auto st = msd_analytic_curve(SubordinatorSpec::stable(0.6), grid);
    CHECK(st.kind == MsdKind::Analytic);
    CHECK(std::abs(fit_power_law(st, 1e-3, 1e3).exponent - 0.6) < 1e-6);

    std::vector<double> small;
    for (int i = 0; i <= 20; ++i) small.push_back(1e-3 * std::pow(10.0, i / 20.0));
    const auto ts = msd_analytic_curve(SubordinatorSpec::tempered_stable(0.6, 1.0, 1.0), small);
    CHECK(std::abs(fit_power_law(ts, 1e-3, 1e-2).exponent - 0.6) < 0.02);
}

TEST_CASE("fit_power_law: errors") {
    MsdCurve c;
    for (double t : {1.0, 2.0, 3.0, 4.0}) {
        c.t_grid.push_back(t);
        c.values.push_back(t);
    }
    CHECK_THROWS_AS(fit_power_law(c, 1.0, 4.0), DomainError);
    c.t_grid.push_back(5.0);
    c.values.push_back(0.0);
    CHECK_THROWS_AS(fit_power_law(c, 1.0, 5.0), DomainError);
    c.values.back() = 5.0;
    CHECK_NOTHROW(fit_power_law(c, 1.0, 5.0));
    CHECK_THROWS_AS(fit_power_law(c, 0.0, 5.0), DomainError);
    CHECK_THROWS_AS(fit_power_law(c, 5.0, 1.0), DomainError);
    c.values.pop_back();
    CHECK_THROWS_AS(fit_power_law(c, 1.0, 5.0), GridError);
}

TEST_CASE("msd_ensemble: values, standard errors and grid checks") {
    const std::vector<double> grid = {0.0, 1.0, 2.0};
    std::vector<sub::Trajectory> trs = {make_trajectory(grid, {0.0, 1.0, -2.0}),
                                        make_trajectory(grid, {0.0, -3.0, 2.0}),
                                        make_trajectory(grid, {0.0, 2.0, 0.0})};
    const auto m = msd_ensemble(trs, grid);
    CHECK(m.kind == MsdKind::EnsembleAvg);
    CHECK(m.ensemble_size == 3);
    CHECK(m.values[0] == 0.0);
    CHECK(m.std_error[0] == 0.0);
    CHECK(m.values[1] == doctest::Approx(14.0 / 3.0));
    CHECK(m.values[2] == doctest::Approx(8.0 / 3.0));
    // squares 1, 9, 4: sample variance 49/3, se 7/3.
    CHECK(m.std_error[1] == doctest::Approx(7.0 / 3.0));

    const std::vector<sub::Trajectory> zeros(5, make_trajectory(grid, {0.0, 0.0, 0.0}));
    for (double v : msd_ensemble(zeros, grid).values) CHECK(v == 0.0);

    CHECK_THROWS_AS(msd_ensemble(std::span(trs).first(1), grid), DomainError);
    const std::vector<double> other = {0.0, 1.0, 2.5};
    CHECK_THROWS_AS(msd_ensemble(trs, other), GridError);
    trs[1] = make_trajectory({0.0, 1.0}, {0.0, 1.0});
    CHECK_THROWS_AS(msd_ensemble(trs, grid), GridError);
}

TEST_CASE("property: msd_ensemble is invariant under trajectory order up to rounding") {
    std::vector<double> grid = {0.0};
    for (double t = 0.1; t <= 5.0; t *= 1.4) grid.push_back(t);
    auto ens = sub::simulate_ensemble(SubordinatorSpec::stable(0.6), grid, 1e-3, 200, 11);
    const auto a = msd_ensemble(ens, grid);
    std::reverse(ens.begin(), ens.end());
    const auto b = msd_ensemble(ens, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-14));
}

TEST_CASE("msd_time_avg: deterministic trajectories") {
    const auto grid = uniform(0.5, 40);
    std::vector<double> lin, cst(grid.size(), 4.2);
    for (double t : grid) lin.push_back(3.0 * t);
    const std::vector<double> lags = {0.5, 1.0, 2.5, 10.0};
    const auto dl = msd_time_avg(make_trajectory(grid, lin), lags, 20.0);
    CHECK(dl.kind == MsdKind::TimeAvg);
    CHECK(dl.series_length == 20.0);
    REQUIRE(dl.values.size() == lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        CHECK(dl.t_grid[i] == lags[i]);
        CHECK(dl.values[i] == doctest::Approx(9.0 * lags[i] * lags[i]).epsilon(1e-13));
    }
    for (double v : msd_time_avg(make_trajectory(grid, cst), lags, 20.0).values) CHECK(v == 0.0);

    // Trapezoid weights: one jump of size 1 at grid index 3 (y = 0 before, 1 after).
    std::vector<double> step(grid.size(), 0.0);
    for (std::size_t j = 3; j < step.size(); ++j) step[j] = 1.0;
    const std::vector<double> lag1 = {0.5};
    // Window s in [0, 9.5], squared increment 1 only at s = 1.0 (interior node): 0.5 / 9.5.
    CHECK(msd_time_avg(make_trajectory(grid, step), lag1, 10.0).values[0] == doctest::Approx(0.5 / 9.5));
}

TEST_CASE("msd_time_avg: errors") {
    const auto grid = uniform(0.5, 40);
    const auto tr = make_trajectory(grid, std::vector<double>(grid.size(), 0.0));
    const std::vector<double> bad_lag = {0.7};
    const std::vector<double> too_long = {20.0};
    const std::vector<double> negative = {-0.5};
    const std::vector<double> ok = {1.0};
    CHECK_THROWS_AS(msd_time_avg(tr, bad_lag, 20.0), GridError);
    CHECK_THROWS_AS(msd_time_avg(tr, too_long, 20.0), DomainError);
    CHECK_THROWS_AS(msd_time_avg(tr, negative, 20.0), DomainError);
    CHECK_THROWS_AS(msd_time_avg(tr, ok, 30.0), GridError);
    CHECK_THROWS_AS(msd_time_avg(tr, ok, 10.2), GridError);
    CHECK_THROWS_AS(msd_time_avg(tr, ok, 0.0), DomainError);
    auto warped = tr;
    warped.t_grid[5] += 0.1;
    CHECK_THROWS_AS(msd_time_avg(warped, ok, 10.0), GridError);
    auto shifted = tr;
    for (double& t : shifted.t_grid) t += 1.0;
    CHECK_THROWS_AS(msd_time_avg(shifted, ok, 10.0), GridError);
}

TEST_CASE("msd_time_avg: Brownian control is linear") {
    const double h = 0.1;
    const auto grid = uniform(h, 10'000);
    RngStream rng(42, 0);
    const auto tr = sub::brownian_trajectory(grid, rng);
    const auto lags = log_lags(h, 1, 100, 10);
    const auto d = msd_time_avg(tr, lags, 1000.0);
    CHECK(std::abs(fit_power_law(d, lags.front(), lags.back()).exponent - 1.0) < 0.05);
}

TEST_CASE("msd_time_avg: subordinated trajectories are linear in the lag") {
    const double h = 0.1;
    const auto grid = uniform(h, 100'000);
    const auto lags = log_lags(h, 1, 100, 10);
    auto exponent = [&](const SubordinatorSpec& spec, std::uint64_t seed) {
        auto rng = sub::RngPair::for_trajectory(seed, 0);
        const auto tr = sub::simulate_trajectory(spec, grid, 1e-2, rng);
        return fit_power_law(msd_time_avg(tr, lags, grid.back()), lags.front(), lags.back()).exponent;
    };
    CHECK(std::abs(exponent(SubordinatorSpec::tempered_stable(0.6, 1.0, 1.0), 2718) - 1.0) < 0.1);
    CHECK(std::abs(exponent(SubordinatorSpec::gamma(1.0, 0.6), 2718) - 1.0) < 0.1);
    // Single stable trajectories scatter by about 0.07 (a handful of long traps dominate); use the median.
    std::vector<double> e;
    for (std::uint64_t seed = 2718; seed < 2718 + 9; ++seed) e.push_back(exponent(SubordinatorSpec::stable(0.6), seed));
    std::nth_element(e.begin(), e.begin() + 4, e.end());
    CHECK(std::abs(e[4] - 1.0) < 0.1);
}

TEST_CASE("default_fit_windows") {
    auto w = default_fit_windows(dist::Family::Stable, 1e-3, 1e3);
    REQUIRE(w.size() == 1);
    CHECK(w[0].label == "full");
    CHECK(w[0].lo == 1e-3);
    CHECK(w[0].hi == 1e3);
    w = default_fit_windows(dist::Family::TemperedStable, 1e-3, 1e2);
    REQUIRE(w.size() == 2);
    CHECK(w[0].label == "small");
    CHECK(w[0].hi == doctest::Approx(0.1));
    CHECK(w[1].label == "large");
    CHECK(w[1].lo == doctest::Approx(1.0));
    w = default_fit_windows(dist::Family::Gamma, 0.1, 1e3);
    REQUIRE(w.size() == 1);
    CHECK(w[0].label == "large");
    CHECK(w[0].lo == doctest::Approx(10.0));
    w = default_fit_windows(dist::Family::TemperedStable, 1.0, 10.0);
    CHECK(w[0].hi == 10.0);
    CHECK(w[1].lo == 1.0);
    CHECK_THROWS_AS(default_fit_windows(dist::Family::Gamma, 1.0, 1.0), DomainError);
    CHECK(std::string(to_string(MsdKind::TimeAvg)) == "timeavg");
}
