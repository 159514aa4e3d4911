#include "subdiff/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/parallel.hpp"

namespace subdiff::sub {

namespace {

void check_dtau(double dtau) {
    if (!(dtau > 0.0) || !std::isfinite(dtau)) throw DomainError("dtau must be > 0");
}

void check_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw GridError("time grid is empty");
    if (t_grid.front() != 0.0) throw GridError("time grid must start at t = 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i]))
            throw GridError("time grid must be strictly increasing and finite");
    }
}

[[noreturn]] void budget_exceeded(std::uint64_t steps, double t) {
    std::ostringstream os;
    os << "subordinator path exceeded " << steps << " steps before crossing t = " << t;
    throw BudgetError(os.str());
}

}  // namespace

SubordinatorPath simulate_subordinator_path(const dist::SubordinatorSpec& spec, double dtau, double t_max,
                                            RngStream& rng, const PathOptions& opt) {
    spec.validate();
    check_dtau(dtau);
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be > 0");
    SubordinatorPath path;
    path.dtau = dtau;
    path.spec = spec;
    path.values.push_back(0.0);
    double u = 0.0;
    while (u <= t_max) {
        if (path.values.size() > opt.max_steps) budget_exceeded(opt.max_steps, t_max);
        u += dist::sample_increment(spec, dtau, rng);
        path.values.push_back(u);
    }
    return path;
}

double inverse_subordinator(const SubordinatorPath& path, double t) {
    if (path.values.size() < 2 || !(path.values.back() > t)) {
        std::ostringstream os;
        os << "subordinator path does not cross t = " << t;
        throw CoverageError(os.str());
    }
    // First n >= 1 with values[n] > t.
    const auto it = std::upper_bound(path.values.begin() + 1, path.values.end(), t);
    const auto n = static_cast<double>(it - path.values.begin());
    return path.dtau * (n - 1.0);
}

RngPair RngPair::for_trajectory(std::uint64_t master_seed, std::uint64_t index) {
    return RngPair{RngStream(master_seed, 2 * index), RngStream(master_seed, 2 * index + 1)};
}

Trajectory simulate_trajectory(const dist::SubordinatorSpec& spec, std::span<const double> t_grid, double dtau,
                               RngPair& rng, const PathOptions& opt) {
    spec.validate();
    check_dtau(dtau);
    check_grid(t_grid);

    Trajectory tr;
    tr.t_grid.assign(t_grid.begin(), t_grid.end());
    tr.s_values.resize(t_grid.size());
    tr.y_values.resize(t_grid.size());
    tr.seed_info = {rng.clock.master_seed(), rng.clock.stream_index()};

    // Walk the operational grid once; n is the index of the current value U(n dtau).
    std::uint64_t n = 1;
    double u = dist::sample_increment(spec, dtau, rng.clock);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        while (u <= t) {
            if (n >= opt.max_steps) budget_exceeded(opt.max_steps, t);
            u += dist::sample_increment(spec, dtau, rng.clock);
            ++n;
        }
        tr.s_values[i] = dtau * static_cast<double>(n - 1);
    }

    tr.y_values[0] = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double ds = tr.s_values[i] - tr.s_values[i - 1];
        const double z = rng.motion.normal();
        tr.y_values[i] = ds > 0.0 ? tr.y_values[i - 1] + std::sqrt(ds) * z : tr.y_values[i - 1];
    }
    return tr;
}

Trajectory brownian_trajectory(std::span<const double> t_grid, RngStream& rng) {
    check_grid(t_grid);
    Trajectory tr;
    tr.t_grid.assign(t_grid.begin(), t_grid.end());
    tr.s_values = tr.t_grid;
    tr.y_values.assign(t_grid.size(), 0.0);
    tr.seed_info = {rng.master_seed(), rng.stream_index()};
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        tr.y_values[i] = tr.y_values[i - 1] + std::sqrt(t_grid[i] - t_grid[i - 1]) * rng.normal();
    return tr;
}

std::vector<Trajectory> simulate_ensemble(const dist::SubordinatorSpec& spec, std::span<const double> t_grid,
                                          double dtau, std::size_t n, std::uint64_t master_seed, unsigned workers,
                                          const PathOptions& opt) {
    spec.validate();
    check_dtau(dtau);
    check_grid(t_grid);
    std::vector<Trajectory> out(n);
    parallel_for(n, workers, [&](std::size_t i) {
        auto rng = RngPair::for_trajectory(master_seed, i);
        out[i] = simulate_trajectory(spec, t_grid, dtau, rng, opt);
    });
    return out;
}

}  // namespace subdiff::sub
