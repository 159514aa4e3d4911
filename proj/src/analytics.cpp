#include "subdiff/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/special_fns.hpp"

namespace subdiff::analytics {

namespace {

using dist::Family;
using dist::SubordinatorSpec;

constexpr double kKernelRelTol = 1e-8;
constexpr double kMsdRelTol = 1e-6;

[[noreturn]] void quadrature_failed(const char* what, double t, double value, double err) {
    std::ostringstream os;
    os.precision(6);
    os << what << "(t = " << t << "): quadrature error " << err << " exceeds tolerance (value " << value << ")";
    throw ConvergenceError(os.str());
}

// e^(-lambda u) E_{alpha,alpha}((lambda u)^alpha), finite for all u >= 0.
double ts_scaled_ml(const SubordinatorSpec& s, double u) {
    const double z = std::pow(s.lambda * u, s.alpha);
    return special::mittag_leffler_scaled(s.alpha, s.alpha, z, s.lambda * u).value;
}

// Panels over the operational-time variable of the gamma integrals, u = t/a.
std::vector<double> gamma_tau_breakpoints(double u, double& tau_max) {
    tau_max = std::max(50.0, 10.0 * u);
    std::vector<double> pts;
    if (u < 1.0) {
        const double scale = 1.0 / -std::log(u);
        for (double k : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) pts.push_back(k * scale);
        for (double x : {1.0, 2.0, 5.0, 10.0, 20.0}) pts.push_back(x);
    } else {
        const double r = std::sqrt(u);
        for (double k : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
            pts.push_back(u - k * r);
            pts.push_back(u + k * r);
        }
        pts.push_back(u);
        for (double x = u / 2.0; x > 0.1; x /= 2.0) pts.push_back(x);
    }
    return quad::make_breakpoints(0.0, tau_max, pts);
}

double gamma_kernel(const SubordinatorSpec& s, double t) {
    const double u = t / s.a;
    const double log_u = std::log(u);
    auto integrand = [&](double tau) {
        const double e = (tau - 1.0) * log_u - u;
        if (tau < 150.0) return special::reciprocal_gamma(tau) * std::exp(e);
        return std::exp(e - special::log_gamma(tau));
    };
    double tau_max = 0.0;
    const auto bp = gamma_tau_breakpoints(u, tau_max);
    const auto res = quad::integrate_panels(integrand, bp, {1e-13});
    const double value = res.value / (s.a * s.c);
    if (res.abs_error / (s.a * s.c) > kKernelRelTol * std::abs(value))
        quadrature_failed("memory_kernel", t, value, res.abs_error);
    return value;
}

double gamma_msd(const SubordinatorSpec& s, double t) {
    const double u = t / s.a;
    // <S(t)> = int_0^inf P(c tau, u) dtau = (1/c) int_0^inf P(sigma, u) dsigma.
    auto integrand = [&](double sigma) { return special::regularized_lower_gamma(sigma, u); };
    double tau_max = 0.0;
    const auto bp = gamma_tau_breakpoints(u, tau_max);
    const auto res = quad::integrate_panels(integrand, bp, {1e-13});
    const double value = res.value / s.c;
    if (res.abs_error / s.c > kMsdRelTol * std::abs(value)) quadrature_failed("msd_analytic", t, value, res.abs_error);
    return value;
}

double ts_msd(const SubordinatorSpec& s, double t) {
    // With u = v^(1/alpha) the u^(alpha-1) endpoint singularity disappears:
    //   int_0^t M(u) du = 1/(alpha c) int_0^(t^alpha) e^(-lambda u) E_{alpha,alpha}((lambda u)^alpha) dv.
    const double alpha = s.alpha;
    const double v_max = std::pow(t, alpha);
    auto integrand = [&](double v) { return ts_scaled_ml(s, std::pow(v, 1.0 / alpha)); };

    std::vector<double> pts;
    for (double f = 0.1; f > 1e-10; f *= 0.1) pts.push_back(v_max * f);
    const special::MlOptions ml_opt;
    const double lam_a = std::pow(s.lambda, alpha);
    const double v_series = ml_opt.z_series / lam_a;
    const double v_asym = special::ml_asymptotic_threshold(alpha, alpha, ml_opt) / lam_a;
    pts.push_back(v_series);
    pts.push_back(v_asym);
    // A few log-spaced panels through the integral-representation band.
    for (double v = v_series * 2.0; v < v_asym; v *= 2.0) pts.push_back(v);
    const auto bp = quad::make_breakpoints(0.0, v_max, pts);
    const auto res = quad::integrate_panels(integrand, bp, {1e-13});
    const double norm = 1.0 / (alpha * s.c);
    const double value = res.value * norm;
    if (res.abs_error * norm > kMsdRelTol * std::abs(value)) quadrature_failed("msd_analytic", t, value, res.abs_error);
    return value;
}

}  // namespace

double memory_kernel(const SubordinatorSpec& spec, double t) {
    spec.validate();
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("memory_kernel: t must be > 0");
    switch (spec.family) {
        case Family::Stable: return std::pow(t, spec.alpha - 1.0) / special::gamma_fn(spec.alpha);
        case Family::TemperedStable: return std::pow(t, spec.alpha - 1.0) * ts_scaled_ml(spec, t) / spec.c;
        case Family::Gamma: return gamma_kernel(spec, t);
    }
    return 0.0;
}

double memory_kernel_limit(const SubordinatorSpec& spec) {
    spec.validate();
    if (spec.family == Family::Stable) return 0.0;
    return 1.0 / spec.unit_mean();
}

double msd_analytic(const SubordinatorSpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("msd_analytic: t must be >= 0");
    if (t == 0.0) return 0.0;
    switch (spec.family) {
        case Family::Stable: return std::pow(t, spec.alpha) / special::gamma_fn(spec.alpha + 1.0);
        case Family::TemperedStable: return ts_msd(spec, t);
        case Family::Gamma: return gamma_msd(spec, t);
    }
    return 0.0;
}

double covariance_analytic(const SubordinatorSpec& spec, double s, double t) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("covariance_analytic: s and t must be >= 0");
    return msd_analytic(spec, std::min(s, t));
}

double gamma_msd_asymptote(double a, double c, double t, GammaRegime regime) {
    if (!(a > 0.0) || !(c > 0.0)) throw DomainError("gamma_msd_asymptote: a and c must be > 0");
    if (!(t > 0.0)) throw DomainError("gamma_msd_asymptote: t must be > 0");
    if (regime == GammaRegime::LargeT) return t / (a * c);
    const double u = t / a;
    if (!(u < 1.0)) throw DomainError("gamma_msd_asymptote: small-t form requires t < a");
    return -std::exp(-u) / std::log(u);
}

double gamma_small_t_ratio(double a, double c, double t) {
    const double u = t / a;
    if (!(u > 0.0 && u < 1.0)) throw DomainError("gamma_small_t_ratio: requires 0 < t < a");
    return msd_analytic(SubordinatorSpec::gamma(a, c), t) * std::log(u) / std::exp(-u);
}

double f_recursion(double u, int k) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("f_recursion: u must lie in (0, 1)");
    if (k < 0) throw DomainError("f_recursion: k must be >= 0");
    const double log_u = std::log(u);
    const double base = -u / log_u;
    double f = base;
    for (int j = 1; j <= k; ++j) f = base - j / log_u * f;
    return f;
}

GammaMatch match_gamma_to_ts(double alpha, double lambda, double c, double a_fixed) {
    const auto ts = SubordinatorSpec::tempered_stable(alpha, lambda, c);
    if (!(a_fixed > 0.0) || !std::isfinite(a_fixed)) throw DomainError("match_gamma_to_ts: a must be > 0");
    return {a_fixed, ts.unit_mean() / a_fixed};
}

}  // namespace subdiff::analytics
