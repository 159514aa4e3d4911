#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "subdiff/distributions.hpp"
#include "subdiff/subordination.hpp"

namespace subdiff::analytics {

// ---------------------------------------------------------------------------
// Closed-form and quadrature characteristics of Y(t) = B(S(t)).

/// Memory kernel M(t), t > 0 (inverse Laplace transform of 1/Psi).
///   Stable: t^(alpha-1)/Gamma(alpha)
///   TS:     e^(-lambda t) t^(alpha-1) E_{alpha,alpha}((lambda t)^alpha) / c
///   Gamma:  e^(-t/a)/c int_0^inf t^(tau-1) / (a^tau Gamma(tau)) dtau
double memory_kernel(const dist::SubordinatorSpec& spec, double t);

/// <Y(t)^2> = <S(t)> = int_0^t M(u) du, t >= 0.
double msd_analytic(const dist::SubordinatorSpec& spec, double t);

/// <Y(s) Y(t)> = msd_analytic(min(s, t)).
double covariance_analytic(const dist::SubordinatorSpec& spec, double s, double t);

/// lim_{t -> inf} M(t) = 1 / <U(1)> (0 for the stable family).
double memory_kernel_limit(const dist::SubordinatorSpec& spec);

// ---------------------------------------------------------------------------
// Gamma-subordinator asymptotics.

enum class GammaRegime { SmallT, LargeT };

/// SmallT: -e^(-t/a) / log(t/a) (requires t < a; the constant prefactor is not included).
/// LargeT: t / (a c).
double gamma_msd_asymptote(double a, double c, double t, GammaRegime regime);

/// msd_analytic(t) * log(t/a) / e^(-t/a) for the gamma family; tends to a constant as t -> 0.
double gamma_small_t_ratio(double a, double c, double t);

/// f(u, k) = int_1^inf u^tau tau^k dtau by the integration-by-parts recursion
/// f(u, k) = -u/log u - k/log u f(u, k-1), f(u, 0) = -u/log u. 0 < u < 1, k >= 0.
double f_recursion(double u, int k);

struct GammaMatch {
    double a;
    double c;
};

/// Gamma parameters (a_fixed, c) whose unit-time mean a c equals the TS mean c alpha lambda^(alpha-1).
GammaMatch match_gamma_to_ts(double alpha, double lambda, double c, double a_fixed);

// ---------------------------------------------------------------------------
// Estimators.

enum class MsdKind { EnsembleAvg, TimeAvg, Analytic };

const char* to_string(MsdKind k);

struct MsdCurve {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> std_error;  // ensemble curves only; empty otherwise
    MsdKind kind = MsdKind::Analytic;
    std::size_t ensemble_size = 0;  // EnsembleAvg
    double series_length = 0.0;     // TimeAvg: T
};

struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;  // natural log
    double t_lo = 0.0;
    double t_hi = 0.0;
    double rms_residual = 0.0;  // in natural-log units
    std::size_t n_points = 0;
};

/// Sample mean of Y(t_i)^2 over trajectories sharing `t_grid`, with standard errors.
MsdCurve msd_ensemble(std::span<const sub::Trajectory> trajectories, std::span<const double> t_grid);

/// delta^2(lag, T) = int_0^(T-lag) (Y(s+lag) - Y(s))^2 ds / (T - lag), trapezoidal rule on the
/// trajectory's uniform grid. Lags must be grid multiples in (0, T); T must be a grid point.
MsdCurve msd_time_avg(const sub::Trajectory& trajectory, std::span<const double> lags, double T);

/// msd_analytic sampled on t_grid.
MsdCurve msd_analytic_curve(const dist::SubordinatorSpec& spec, std::span<const double> t_grid);

/// Least-squares line through (log t, log value) for grid points with t in [t_lo, t_hi].
/// Needs at least 5 points, all with positive values.
PowerLawFit fit_power_law(const MsdCurve& curve, double t_lo, double t_hi);

struct FitWindow {
    std::string label;
    double lo;
    double hi;
};

/// Stable: whole range. TS: lowest and highest two decades. Gamma: highest two decades.
std::vector<FitWindow> default_fit_windows(dist::Family family, double t_min, double t_max);

}  // namespace subdiff::analytics
