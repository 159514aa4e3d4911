#include "subdiff/special_fns.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "subdiff/error.hpp"

namespace subdiff::special {

namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

// Largest z with Gamma(z) below DBL_MAX.
constexpr double kGammaMaxArg = 171.62437695630272;

// Lanczos series sum for Gamma(x) with x >= 1 (argument x - 1 in the usual form).
double lanczos_sum(double x) {
    const double zm1 = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (zm1 + static_cast<double>(k));
    return acc;
}

// Gamma(x) for x >= 1.
double gamma_ge1(double x) {
    const double t = x - 0.5 + kLanczosG;
    const double half = std::pow(t, 0.5 * (x - 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(x);
}

// log Gamma(x) for x >= 1.
double log_gamma_ge1(double x) {
    const double t = x - 0.5 + kLanczosG;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

std::string fmt_args(const char* name, double a, double b) {
    std::ostringstream os;
    os.precision(17);
    os << name << "(" << a << ", " << b << ")";
    return os.str();
}

}  // namespace

double gamma_fn(double z) {
    if (!(z > 0.0)) throw DomainError("gamma_fn: argument must be > 0");
    if (z > kGammaMaxArg) throw OverflowError("gamma_fn: result overflows for z > 171.624");
    if (z < 1.0) return gamma_ge1(z + 1.0) / z;
    return gamma_ge1(z);
}

double log_gamma(double z) {
    if (!(z > 0.0)) throw DomainError("log_gamma: argument must be > 0");
    if (z < 1.0) return log_gamma_ge1(z + 1.0) - std::log(z);
    if (z < 20.0) return std::log(gamma_ge1(z));
    return log_gamma_ge1(z);
}

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    // r in [0, 2): reduce to an argument in [-1/2, 1/2] of sin or cos.
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r < 0.25) return std::sin(std::numbers::pi * r);
    if (r < 0.75) return std::cos(std::numbers::pi * (r - 0.5));
    if (r < 1.25) return std::sin(std::numbers::pi * (1.0 - r));
    if (r < 1.75) return -std::cos(std::numbers::pi * (r - 1.5));
    return std::sin(std::numbers::pi * (r - 2.0));
}

double log_abs_gamma(double x, int& sign) {
    if (x > 0.0) {
        sign = 1;
        return log_gamma(x);
    }
    if (x == std::floor(x)) {
        sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    const double s = sin_pi(x);
    sign = s > 0.0 ? 1 : -1;
    return std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma(1.0 - x);
}

double reciprocal_gamma(double x) {
    if (x > 0.0) {
        if (x <= kGammaMaxArg) return 1.0 / gamma_fn(x);
        return std::exp(-log_gamma(x));
    }
    if (x == std::floor(x)) return 0.0;
    const double one_minus = 1.0 - x;
    if (one_minus <= kGammaMaxArg) return gamma_fn(one_minus) * sin_pi(x) / std::numbers::pi;
    int sign = 0;
    const double lg = log_abs_gamma(x, sign);
    return sign * std::exp(-lg);
}

namespace {

// Series for P(s, x): x^s e^-x / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n)).
double lower_gamma_series_sum(double s, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (term < sum * 1e-17) return sum;
    }
    throw ConvergenceError(fmt_args("lower_incomplete_gamma series", s, x));
}

// Continued fraction for Gamma(s, x) e^x x^-s (modified Lentz).
double upper_gamma_cf(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h;
    }
    throw ConvergenceError(fmt_args("lower_incomplete_gamma continued fraction", s, x));
}

void check_incgamma_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("incomplete gamma: s must be > 0");
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError("incomplete gamma: x must be >= 0");
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
    check_incgamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) {
        const double log_pref = s * std::log(x) - x - log_gamma(s + 1.0);
        return std::min(1.0, std::exp(log_pref) * lower_gamma_series_sum(s, x));
    }
    // Q = e^-x x^s / Gamma(s) * CF
    const double q = std::exp(s * std::log(x) - x - log_gamma(s)) * upper_gamma_cf(s, x);
    return std::max(0.0, 1.0 - q);
}

double lower_incomplete_gamma(double s, double x) {
    check_incgamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) {
        const double v = std::exp(s * std::log(x) - x) / s * lower_gamma_series_sum(s, x);
        if (!std::isfinite(v)) throw OverflowError(fmt_args("lower_incomplete_gamma", s, x));
        return v;
    }
    const double g = gamma_fn(s);
    if (std::isinf(x)) return g;
    const double upper = std::exp(s * std::log(x) - x) * upper_gamma_cf(s, x);
    return g - upper;
}

double bessel_i(double v, double z) {
    if (!(v >= 0.0) || std::isnan(v)) throw DomainError("bessel_i: order must be >= 0");
    if (!(z >= 0.0) || std::isnan(z)) throw DomainError("bessel_i: argument must be >= 0");
    if (z == 0.0) return v == 0.0 ? 1.0 : 0.0;
    const double q = 0.25 * z * z;
    double term = std::exp(v * std::log(0.5 * z) - log_gamma(v + 1.0));
    double sum = term;
    for (int k = 0; k < 100000; ++k) {
        term *= q / ((k + 1.0) * (v + k + 1.0));
        sum += term;
        if (term < sum * 1e-17) return sum;
    }
    throw ConvergenceError(fmt_args("bessel_i", v, z));
}

double lower_incomplete_gamma_bessel_series(double s, double x, int n_terms) {
    check_incgamma_args(s, x);
    if (n_terms < 1) throw DomainError("lower_incomplete_gamma_bessel_series: n_terms must be >= 1");
    const double arg = 2.0 * std::sqrt(x);
    double en = 0.0;          // e_n(-1)
    double inv_fact = 1.0;     // (-1)^k / k!
    double sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) inv_fact *= -1.0 / n;
        en += inv_fact;
        sum += en * std::pow(x, 0.5 * n) * bessel_i(n + s, arg);
    }
    return gamma_fn(s) * std::pow(x, 0.5 * s) * std::exp(-x) * sum;
}

std::vector<double> reciprocal_gamma_coeffs(int n_max) {
    if (n_max < 1) throw DomainError("reciprocal_gamma_coeffs: n_max must be >= 1");
    // -log Gamma(1+z) = gamma_E z + sum_{k>=2} (-1)^(k+1) zeta(k) z^k / k
    std::vector<double> g(static_cast<std::size_t>(n_max), 0.0);
    if (n_max > 1) g[1] = std::numbers::egamma;
    for (int k = 2; k < n_max; ++k) {
        const double sgn = (k % 2 == 0) ? -1.0 : 1.0;
        g[k] = sgn * std::riemann_zeta(static_cast<double>(k)) / k;
    }
    // h = exp(g) via n h_n = sum_{k=1}^n k g_k h_{n-k}; 1/Gamma(z) = z h(z).
    std::vector<double> h(static_cast<std::size_t>(n_max), 0.0);
    h[0] = 1.0;
    for (int n = 1; n < n_max; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += k * g[k] * h[n - k];
        h[n] = acc / n;
    }
    return h;  // h[n] is a_{n+1}
}

}  // namespace subdiff::special
