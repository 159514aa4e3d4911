#pragma once

#include <optional>
#include <vector>

namespace subdiff::special {

/// Gamma function for z > 0 (Lanczos approximation, relative error ~1e-15).
/// Throws DomainError for z <= 0 and OverflowError above ~171.62.
double gamma_fn(double z);

/// log Gamma(z) for z > 0.
double log_gamma(double z);

/// log|Gamma(x)| for any real x; +inf at the poles (x = 0, -1, -2, ...).
/// `sign` receives the sign of Gamma(x) (0 at poles).
double log_abs_gamma(double x, int& sign);

/// 1/Gamma(x) for any real x. Entire, so exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

/// Lower incomplete gamma function gamma(s, x) = int_0^x t^(s-1) e^(-t) dt.
double lower_incomplete_gamma(double s, double x);

/// Regularized form P(s, x) = gamma(s, x) / Gamma(s), in [0, 1].
double regularized_lower_gamma(double s, double x);

/// gamma(s, x) from the truncated Bessel expansion
///   Gamma(s) x^(s/2) e^(-x) sum_n e_n(-1) x^(n/2) I_(n+s)(2 sqrt(x)),
/// with e_n the truncated exponential series. Only meant for cross-checking
/// lower_incomplete_gamma at small x.
double lower_incomplete_gamma_bessel_series(double s, double x, int n_terms);

/// Modified Bessel function of the first kind by its power series.
double bessel_i(double v, double z);

/// Coefficients a_1..a_n of 1/Gamma(z) = sum_k a_k z^k (a_1 = 1, a_2 = Euler's gamma).
/// Obtained by exponentiating the Taylor series of log Gamma(1 + z).
std::vector<double> reciprocal_gamma_coeffs(int n_max);

// ---------------------------------------------------------------------------
// Generalized Mittag-Leffler function E_{alpha,beta}(z), 0 < alpha < 1, real z.

enum class MlRegime { Series, IntegralRep, AsymptoticExpansion };

const char* to_string(MlRegime r);

struct MlEvalReport {
    double value = 0.0;
    MlRegime regime = MlRegime::Series;
    int terms_used = 0;  // series terms, asymptotic terms, or quadrature panels
    double est_abs_error = 0.0;
};

struct MlOptions {
    /// Success requires est_abs_error <= max(abs_tol, (rel_tol + 8 eps cond) |value|),
    /// cond = 1 + z^(1/alpha)/alpha for z > 0 and 1 otherwise.
    double abs_tol = 1e-10;
    double rel_tol = 1e-13;
    /// Series is tried first for |z| <= z_series.
    double z_series = 5.0;
    int max_series_terms = 400;
    /// Terms kept in the large-|z| expansion.
    int asymptotic_terms = 5;
    /// Evaluate in exactly this regime (no fallback), mainly for cross-checks.
    std::optional<MlRegime> force;
};

/// |z| from which the asymptotic expansion with `opt.asymptotic_terms` terms
/// has a remainder below opt.abs_tol.
double ml_asymptotic_threshold(double alpha, double beta, const MlOptions& opt = {});

/// E_{alpha,beta}(z) with regime selection:
///   |z| <= z_series            -> power series (compensated summation)
///   |z| >= asymptotic threshold -> large-argument expansion
///   otherwise                   -> integral representation (needs beta < 1 + alpha)
/// If the chosen regime misses the tolerance the remaining applicable regimes
/// are tried in the order Series, IntegralRep, AsymptoticExpansion.
/// Throws DomainError (alpha outside (0,1)), ConvergenceError, OverflowError
/// (when the exponential growth for z > 0 leaves the double range).
MlEvalReport mittag_leffler(double alpha, double beta, double z, const MlOptions& opt = {});

/// exp(-shift) * E_{alpha,beta}(z), evaluated without forming E itself, so it
/// stays finite when E overflows (e.g. shift = z^(1/alpha)). Error fields are
/// reported on the scaled value.
MlEvalReport mittag_leffler_scaled(double alpha, double beta, double z, double shift,
                                   const MlOptions& opt = {});

/// Integrand of the integral representation:
///   K = r^((1-beta)/alpha) e^(-r^(1/alpha)) (r sin(pi(1-beta)) - z sin(pi(1-beta+alpha)))
///       / (pi alpha (r^2 - 2 r z cos(pi alpha) + z^2)).
double ml_kernel_K(double alpha, double beta, double r, double z);

}  // namespace subdiff::special
