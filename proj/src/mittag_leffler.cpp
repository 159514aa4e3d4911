#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/special_fns.hpp"

namespace subdiff::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

struct Attempt {
    MlEvalReport report;
    bool ok = false;
    bool applicable = true;
};

// For z > 0 the relative condition number of E with respect to z grows like
// z^(1/alpha)/alpha; rounding of the argument sets a floor on attainable accuracy.
double target_error(const MlOptions& opt, double alpha, double z, double value) {
    const double cond = z > 0.0 ? 1.0 + std::pow(z, 1.0 / alpha) / alpha : 1.0;
    return std::max(opt.abs_tol, (opt.rel_tol + 8.0 * kEps * cond) * std::abs(value));
}

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha) - shift) for z > 0, plus its
// rounding error (dominated by the error of the exponent argument).
void exp_term(double alpha, double beta, double z, double shift, double& value, double& err) {
    const double zpow = std::pow(z, 1.0 / alpha);
    const double log_v = (zpow - shift) + ((1.0 - beta) / alpha * std::log(z) - std::log(alpha));
    value = std::exp(log_v);
    err = value * kEps * (4.0 + std::abs(zpow) + std::abs(shift) + std::abs(log_v));
}

Attempt eval_series(double alpha, double beta, double z, double shift, const MlOptions& opt) {
    Attempt a;
    a.report.regime = MlRegime::Series;
    const double scale = std::exp(-shift);
    if (z == 0.0) {
        a.report.value = reciprocal_gamma(beta) * scale;
        a.report.terms_used = 1;
        a.report.est_abs_error = 4.0 * kEps * std::abs(a.report.value);
        a.ok = true;
        return a;
    }
    const double log_abs_z = std::log(std::abs(z));
    CompensatedSum sum;
    double rounding = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    double prev_log_abs = 0.0;
    bool prev_nonzero = false;
    int k = 0;
    for (; k < opt.max_series_terms; ++k) {
        int sign = 0;
        const double x = alpha * k + beta;
        const double lg = log_abs_gamma(x, sign);
        if (sign == 0) {
            prev_nonzero = false;
            continue;
        }
        const double log_abs = k * log_abs_z - lg - shift;
        const double mag = std::exp(log_abs);
        if (!std::isfinite(mag)) return a;  // overflow: regime unusable
        const double term = ((z < 0.0 && (k % 2 == 1)) ? -sign : sign) * mag;
        sum.add(term);
        rounding += mag * kEps * (4.0 + std::abs(k * log_abs_z) + std::abs(lg) + std::abs(shift));
        // Ratio |t_{k+1}/t_k| is decreasing in k once alpha*k + beta > 0 (log-convexity of Gamma),
        // so a ratio below one bounds the tail by a geometric series.
        if (prev_nonzero && x > 0.0) {
            const double ratio = std::exp(log_abs - prev_log_abs);
            if (ratio < 1.0) {
                int s_next = 0;
                const double lg_next = log_abs_gamma(x + alpha, s_next);
                const double next = (s_next == 0) ? 0.0 : std::exp((k + 1) * log_abs_z - lg_next - shift);
                const double r_next = next / mag;
                tail = r_next < 1.0 ? next / (1.0 - r_next) : std::numeric_limits<double>::infinity();
                if (tail <= 0.01 * target_error(opt, alpha, z, sum.value())) {
                    ++k;
                    break;
                }
            }
        }
        prev_log_abs = log_abs;
        prev_nonzero = true;
    }
    a.report.value = sum.value();
    a.report.terms_used = k;
    a.report.est_abs_error = tail + rounding;
    a.ok = std::isfinite(a.report.est_abs_error) &&
           a.report.est_abs_error <= target_error(opt, alpha, z, a.report.value);
    return a;
}

Attempt eval_asymptotic(double alpha, double beta, double z, double shift, const MlOptions& opt) {
    Attempt a;
    a.report.regime = MlRegime::AsymptoticExpansion;
    if (z == 0.0) {
        a.applicable = false;
        return a;
    }
    const double scale = std::exp(-shift);
    double value = 0.0;
    double err = 0.0;
    if (z > 0.0) exp_term(alpha, beta, z, shift, value, err);
    const int p = std::max(1, opt.asymptotic_terms);
    CompensatedSum sum;
    sum.add(value);
    for (int k = 1; k <= p; ++k) {
        sum.add(-std::pow(z, -k) * reciprocal_gamma(beta - alpha * k) * scale);
    }
    // Remainder: largest of the next few omitted terms (single terms can vanish
    // or nearly vanish at poles of Gamma).
    double rem = 0.0;
    for (int k = p + 1; k <= p + 3; ++k)
        rem = std::max(rem, std::abs(std::pow(z, -k) * reciprocal_gamma(beta - alpha * k)) * scale);
    a.report.value = sum.value();
    a.report.terms_used = p;
    a.report.est_abs_error = rem + err + 4.0 * kEps * std::abs(a.report.value);
    a.ok = std::isfinite(a.report.value) && a.report.est_abs_error <= target_error(opt, alpha, z, a.report.value);
    return a;
}

Attempt eval_integral(double alpha, double beta, double z, double shift, const MlOptions& opt) {
    Attempt a;
    a.report.regime = MlRegime::IntegralRep;
    if (z == 0.0 || !(beta < 1.0 + alpha)) {
        a.applicable = false;
        return a;
    }
    const double s1 = std::sin(kPi * (1.0 - beta));
    const double s2 = std::sin(kPi * (1.0 - beta + alpha));
    const double ca = std::cos(kPi * alpha);
    const double sa = std::sin(kPi * alpha);

    // With r = w^alpha: K dr = (1/pi) w^(alpha-beta) e^-w N(r)/D(r) dw.
    // For beta > alpha the w^(alpha-beta) endpoint singularity is removed
    // by w = v^q, q = 1/(1 + alpha - beta).
    const double q = beta > alpha ? 1.0 / (1.0 + alpha - beta) : 1.0;
    const double w_cut = 60.0;
    auto core = [&](double w) {
        const double r = std::pow(w, alpha);
        const double num = r * s1 - z * s2;
        const double den = (r - z * ca) * (r - z * ca) + z * z * sa * sa;
        return std::exp(-w) * num / den / kPi;
    };
    auto integrand = [&](double v) -> double {
        if (q != 1.0) {
            if (v <= 0.0) {
                return q * core(0.0);
            }
            return q * core(std::pow(v, q));
        }
        if (v <= 0.0) return alpha == beta ? core(0.0) : 0.0;
        return std::pow(v, alpha - beta) * core(v);
    };

    std::vector<double> wpts = quad::log_points(1e-16, 1.0, 100.0);
    for (double w : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) wpts.push_back(w);
    const double r0 = z * ca;
    if (r0 > 0.0) {
        const double width = std::abs(z) * sa;
        for (double r : {r0 - 2.0 * width, r0 - width, r0 - 0.25 * width, r0, r0 + 0.25 * width,
                         r0 + width, r0 + 2.0 * width}) {
            if (r > 0.0) wpts.push_back(std::pow(r, 1.0 / alpha));
        }
    }
    auto pts = quad::make_breakpoints(0.0, w_cut, wpts);
    if (q != 1.0) {
        for (double& w : pts) w = std::pow(w, 1.0 / q);
    }
    const auto res = quad::integrate_panels(integrand, pts, {1e-13});

    const double scale = std::exp(-shift);
    double value = res.value * scale;
    double err = (res.abs_error + 8.0 * kEps * res.l1) * scale;
    if (z > 0.0) {
        double ev = 0.0;
        double ee = 0.0;
        exp_term(alpha, beta, z, shift, ev, ee);
        value += ev;
        err += ee;
    }
    a.report.value = value;
    a.report.terms_used = static_cast<int>(pts.size()) - 1;
    a.report.est_abs_error = err;
    a.ok = std::isfinite(value) && err <= target_error(opt, alpha, z, value);
    return a;
}

Attempt eval_in(MlRegime r, double alpha, double beta, double z, double shift, const MlOptions& opt) {
    switch (r) {
        case MlRegime::Series: return eval_series(alpha, beta, z, shift, opt);
        case MlRegime::IntegralRep: return eval_integral(alpha, beta, z, shift, opt);
        case MlRegime::AsymptoticExpansion: return eval_asymptotic(alpha, beta, z, shift, opt);
    }
    return {};
}

MlEvalReport ml_impl(double alpha, double beta, double z, double shift, const MlOptions& opt) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("mittag_leffler: alpha must lie in (0, 1)");
    if (!std::isfinite(beta) || !std::isfinite(z) || !std::isfinite(shift))
        throw DomainError("mittag_leffler: arguments must be finite");

    if (z > 0.0 && (1.0 - beta) / alpha * std::log(z) + std::pow(z, 1.0 / alpha) - std::log(alpha) - shift > 709.0)
        throw OverflowError("mittag_leffler: value overflows double");

    std::vector<MlRegime> order;
    if (opt.force) {
        order.push_back(*opt.force);
    } else {
        const double az = std::abs(z);
        MlRegime primary = MlRegime::IntegralRep;
        if (az <= opt.z_series) primary = MlRegime::Series;
        else if (az >= ml_asymptotic_threshold(alpha, beta, opt)) primary = MlRegime::AsymptoticExpansion;
        order.push_back(primary);
        for (MlRegime r : {MlRegime::Series, MlRegime::IntegralRep, MlRegime::AsymptoticExpansion})
            if (r != primary) order.push_back(r);
    }

    std::ostringstream diag;
    diag.precision(6);
    for (MlRegime r : order) {
        const Attempt a = eval_in(r, alpha, beta, z, shift, opt);
        if (a.ok) return a.report;
        diag << " " << to_string(r);
        if (!a.applicable) diag << "(n/a)";
        else diag << "(err " << a.report.est_abs_error << ")";
    }
    std::ostringstream os;
    os.precision(17);
    os << "mittag_leffler(" << alpha << ", " << beta << ", " << z << "): no regime met tolerance:"
       << diag.str();
    throw ConvergenceError(os.str());
}

}  // namespace

const char* to_string(MlRegime r) {
    switch (r) {
        case MlRegime::Series: return "series";
        case MlRegime::IntegralRep: return "integral";
        case MlRegime::AsymptoticExpansion: return "asymptotic";
    }
    return "?";
}

double ml_asymptotic_threshold(double alpha, double beta, const MlOptions& opt) {
    const int p = std::max(1, opt.asymptotic_terms);
    double z = opt.z_series;
    for (int k = p + 1; k <= p + 3; ++k) {
        const double c = std::abs(reciprocal_gamma(beta - alpha * k));
        if (c > 0.0) z = std::max(z, std::pow(c / opt.abs_tol, 1.0 / k));
    }
    return z;
}

MlEvalReport mittag_leffler(double alpha, double beta, double z, const MlOptions& opt) {
    MlEvalReport r = ml_impl(alpha, beta, z, 0.0, opt);
    if (!std::isfinite(r.value)) throw OverflowError("mittag_leffler: value overflows double");
    return r;
}

MlEvalReport mittag_leffler_scaled(double alpha, double beta, double z, double shift, const MlOptions& opt) {
    return ml_impl(alpha, beta, z, shift, opt);
}

double ml_kernel_K(double alpha, double beta, double r, double z) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ml_kernel_K: alpha must lie in (0, 1)");
    if (!(beta < 1.0 + alpha)) throw DomainError("ml_kernel_K: beta must be < 1 + alpha");
    if (!(r > 0.0)) throw DomainError("ml_kernel_K: r must be > 0");
    if (z == 0.0 || !std::isfinite(z)) throw DomainError("ml_kernel_K: z must be finite and nonzero");
    const double den = r * r - 2.0 * r * z * std::cos(kPi * alpha) + z * z;
    if (den == 0.0) throw DomainError("ml_kernel_K: singular denominator");
    const double num = r * std::sin(kPi * (1.0 - beta)) - z * std::sin(kPi * (1.0 - beta + alpha));
    return std::pow(r, (1.0 - beta) / alpha) * std::exp(-std::pow(r, 1.0 / alpha)) * num / (kPi * alpha * den);
}

}  // namespace subdiff::special
