#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subdiff/distributions.hpp"
#include "subdiff/rng.hpp"

namespace subdiff::sub {

struct PathOptions {
    /// Maximum operational-time steps per path before BudgetError.
    std::uint64_t max_steps = 100'000'000;
};

/// Grid realization U(0)=0, U(dtau), U(2 dtau), ... of a subordinator.
struct SubordinatorPath {
    double dtau = 0.0;
    std::vector<double> values;
    dist::SubordinatorSpec spec;
};

/// Simulates U on the operational grid until it exceeds t_max.
SubordinatorPath simulate_subordinator_path(const dist::SubordinatorSpec& spec, double dtau, double t_max,
                                            RngStream& rng, const PathOptions& opt = {});

/// Grid estimate of S(t) = inf{tau > 0 : U(tau) > t}: dtau * (n - 1) with n the first
/// index >= 1 where values[n] > t. Throws CoverageError if the path never exceeds t.
double inverse_subordinator(const SubordinatorPath& path, double t);

struct SeedInfo {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;  // stream of U; the Brownian stream is stream_index + 1
};

struct Trajectory {
    std::vector<double> t_grid;
    std::vector<double> s_values;
    std::vector<double> y_values;
    SeedInfo seed_info;
};

/// Two independent streams: one drives the subordinator, the other the Brownian motion.
struct RngPair {
    RngStream clock;
    RngStream motion;

    /// Streams (2 i, 2 i + 1) of `master_seed` for trajectory i.
    static RngPair for_trajectory(std::uint64_t master_seed, std::uint64_t index);
};

/// Y(t) = B(S(t)) sampled on t_grid (strictly increasing, t_grid[0] == 0).
/// Increments Y(t_i) - Y(t_(i-1)) are N(0, S(t_i) - S(t_(i-1))).
/// Produces the same S values as simulate_subordinator_path + inverse_subordinator
/// with the same clock stream, without storing the path.
Trajectory simulate_trajectory(const dist::SubordinatorSpec& spec, std::span<const double> t_grid, double dtau,
                               RngPair& rng, const PathOptions& opt = {});

/// Unsubordinated control: S(t) = t, Y = standard Brownian motion on t_grid.
Trajectory brownian_trajectory(std::span<const double> t_grid, RngStream& rng);

/// Independent trajectories 0..n-1, trajectory i using RngPair::for_trajectory(master_seed, i).
/// The result does not depend on `workers`.
std::vector<Trajectory> simulate_ensemble(const dist::SubordinatorSpec& spec, std::span<const double> t_grid,
                                          double dtau, std::size_t n, std::uint64_t master_seed,
                                          unsigned workers = 1, const PathOptions& opt = {});

}  // namespace subdiff::sub
