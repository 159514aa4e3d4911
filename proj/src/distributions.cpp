#include "subdiff/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/special_fns.hpp"

namespace subdiff::dist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinPositive = std::numeric_limits<double>::min();

void require(bool cond, const char* msg) {
    if (!cond) throw DomainError(msg);
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

double clamp_positive(double log_x) {
    const double x = std::exp(log_x);
    return x < kMinPositive ? kMinPositive : x;
}

// log of Kanter's A(u) = sin(au)^(a/(1-a)) sin((1-a)u) / sin(u)^(1/(1-a)).
double log_kanter_a(double alpha, double u) {
    const double inv = 1.0 / (1.0 - alpha);
    return alpha * inv * std::log(std::sin(alpha * u)) + std::log(std::sin((1.0 - alpha) * u)) -
           inv * std::log(std::sin(u));
}

// Gamma(shape, 1) for shape >= 1.
double gamma_mt(double shape, RngStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

const char* to_string(Family f) {
    switch (f) {
        case Family::Stable: return "stable";
        case Family::TemperedStable: return "ts";
        case Family::Gamma: return "gamma";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "stable" || s == "s") return Family::Stable;
    if (s == "ts" || s == "tempered" || s == "tempered_stable" || s == "tempered-stable") return Family::TemperedStable;
    if (s == "gamma" || s == "g") return Family::Gamma;
    throw DomainError("unknown subordinator family '" + std::string(name) + "'");
}

SubordinatorSpec SubordinatorSpec::stable(double alpha) {
    SubordinatorSpec s;
    s.family = Family::Stable;
    s.alpha = alpha;
    s.validate();
    return s;
}

SubordinatorSpec SubordinatorSpec::tempered_stable(double alpha, double lambda, double c) {
    SubordinatorSpec s;
    s.family = Family::TemperedStable;
    s.alpha = alpha;
    s.lambda = lambda;
    s.c = c;
    s.validate();
    return s;
}

SubordinatorSpec SubordinatorSpec::gamma(double a, double c) {
    SubordinatorSpec s;
    s.family = Family::Gamma;
    s.a = a;
    s.c = c;
    s.validate();
    return s;
}

void SubordinatorSpec::validate() const {
    switch (family) {
        case Family::Stable:
            require(alpha > 0.0 && alpha < 1.0, "stable subordinator: alpha must lie in (0, 1)");
            break;
        case Family::TemperedStable:
            require(alpha > 0.0 && alpha < 1.0, "tempered stable subordinator: alpha must lie in (0, 1)");
            require(positive_finite(lambda), "tempered stable subordinator: lambda must be > 0");
            require(positive_finite(c), "tempered stable subordinator: c must be > 0");
            break;
        case Family::Gamma:
            require(positive_finite(a), "gamma subordinator: a must be > 0");
            require(positive_finite(c), "gamma subordinator: c must be > 0");
            break;
    }
}

double SubordinatorSpec::unit_mean() const {
    switch (family) {
        case Family::Stable: return std::numeric_limits<double>::infinity();
        case Family::TemperedStable: return c * alpha * std::pow(lambda, alpha - 1.0);
        case Family::Gamma: return a * c;
    }
    return 0.0;
}

double levy_exponent(const SubordinatorSpec& spec, double z) {
    spec.validate();
    require(z >= 0.0, "levy_exponent: z must be >= 0");
    switch (spec.family) {
        case Family::Stable: return std::pow(z, spec.alpha);
        case Family::TemperedStable: {
            // (lambda+z)^a - lambda^a = lambda^a expm1(a log1p(z/lambda)), no cancellation at small z
            return spec.c * std::pow(spec.lambda, spec.alpha) * std::expm1(spec.alpha * std::log1p(z / spec.lambda));
        }
        case Family::Gamma: return spec.c * std::log1p(spec.a * z);
    }
    return 0.0;
}

double sample_stable_increment(double alpha, double scale_t, RngStream& rng) {
    require(alpha > 0.0 && alpha < 1.0, "sample_stable_increment: alpha must lie in (0, 1)");
    require(positive_finite(scale_t), "sample_stable_increment: scale_t must be > 0");
    const double u = kPi * rng.uniform();
    const double e = rng.exponential();
    const double log_x = (1.0 - alpha) / alpha * (log_kanter_a(alpha, u) - std::log(e));
    return clamp_positive(log_x + std::log(scale_t) / alpha);
}

double sample_tempered_stable(double alpha, double lambda, double c, double scale_t, RngStream& rng,
                              SamplerStats* stats, const TemperedStableOptions& opt) {
    require(alpha > 0.0 && alpha < 1.0, "sample_tempered_stable: alpha must lie in (0, 1)");
    require(lambda >= 0.0 && std::isfinite(lambda), "sample_tempered_stable: lambda must be >= 0");
    require(positive_finite(c), "sample_tempered_stable: c must be > 0");
    require(positive_finite(scale_t), "sample_tempered_stable: scale_t must be > 0");

    // Acceptance rate of one tilting step is exp(-scale c lambda^alpha).
    const double rate = scale_t * c * std::pow(lambda, alpha);
    std::uint64_t pieces = 1;
    if (std::exp(-rate) < opt.split_threshold) {
        pieces = static_cast<std::uint64_t>(std::ceil(rate / std::numbers::ln2));
    }
    const double piece_scale = scale_t * c / static_cast<double>(pieces);
    double total = 0.0;
    for (std::uint64_t p = 0; p < pieces; ++p) {
        std::uint64_t tries = 0;
        for (;;) {
            if (++tries > opt.max_attempts)
                throw BudgetError("sample_tempered_stable: rejection budget exhausted");
            const double x = sample_stable_increment(alpha, piece_scale, rng);
            const double u = rng.uniform();
            if (stats) ++stats->attempts;
            if (u <= std::exp(-lambda * x)) {
                if (stats) ++stats->accepted;
                total += x;
                break;
            }
        }
    }
    return total;
}

double sample_gamma_increment(double a, double c, double scale_t, RngStream& rng) {
    require(positive_finite(a), "sample_gamma_increment: a must be > 0");
    require(positive_finite(c), "sample_gamma_increment: c must be > 0");
    require(positive_finite(scale_t), "sample_gamma_increment: scale_t must be > 0");
    const double shape = c * scale_t;
    if (shape >= 1.0) return std::max(kMinPositive, a * gamma_mt(shape, rng));
    // Boost: G(k) = G(k + 1) U^(1/k), done in logs since U^(1/k) underflows for tiny k.
    const double g = gamma_mt(shape + 1.0, rng);
    const double log_u = std::log(rng.uniform());
    return clamp_positive(std::log(a) + std::log(g) + log_u / shape);
}

double sample_increment(const SubordinatorSpec& spec, double scale_t, RngStream& rng) {
    switch (spec.family) {
        case Family::Stable: return sample_stable_increment(spec.alpha, scale_t, rng);
        case Family::TemperedStable: return sample_tempered_stable(spec.alpha, spec.lambda, spec.c, scale_t, rng);
        case Family::Gamma: return sample_gamma_increment(spec.a, spec.c, scale_t, rng);
    }
    return 0.0;
}

double stable_sigma_for_scale(double alpha, double scale) {
    return std::pow(scale * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
}

double pdf_stable(double alpha, double sigma, double x) {
    require(alpha > 0.0 && alpha < 1.0, "pdf_stable: alpha must lie in (0, 1)");
    require(positive_finite(sigma), "pdf_stable: sigma must be > 0");
    require(x >= 0.0, "pdf_stable: x must be >= 0");
    if (x == 0.0 || std::isinf(x)) return 0.0;

    // S(alpha, sigma, 1, 0) has Laplace transform exp(-s z^alpha), s = sigma^alpha / cos(pi alpha/2),
    // i.e. X = s^(1/alpha) X1 with X1 normalized. From Kanter's representation,
    //   f1(x) = alpha/(1-alpha) x^(-1/(1-alpha)) (1/pi) int_0^pi A(u) exp(-x^(-alpha/(1-alpha)) A(u)) du.
    const double s = std::pow(sigma, alpha) / std::cos(kPi * alpha / 2.0);
    const double k = std::pow(s, 1.0 / alpha);
    const double x1 = x / k;
    const double inv = 1.0 / (1.0 - alpha);
    const double log_y = -alpha * inv * std::log(x1);

    auto integrand = [&](double u) {
        const double la = log_kanter_a(alpha, u);
        const double arg = la - std::exp(log_y + la);
        return std::isnan(arg) ? 0.0 : std::exp(arg);
    };

    // The integrand peaks where A(u) = 1/y; A increases from A(0+) to infinity.
    const double target = -log_y;
    double lo = 1e-12;
    double hi = kPi - 1e-15;
    double u_star = 0.0;
    if (log_kanter_a(alpha, lo) >= target) {
        u_star = 0.0;
    } else {
        for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (log_kanter_a(alpha, mid) < target) lo = mid;
            else hi = mid;
        }
        u_star = 0.5 * (lo + hi);
    }
    std::vector<double> pts;
    for (double d = 1e-1; d > 1e-14; d *= 0.1) {
        pts.push_back(kPi * d);
        pts.push_back(kPi - kPi * d);
    }
    if (u_star > 0.0) {
        const double gap = std::min(u_star, kPi - u_star);
        for (double f : {0.5, 0.1, 0.01}) {
            pts.push_back(u_star - f * gap);
            pts.push_back(u_star + f * gap);
        }
        pts.push_back(u_star);
    }
    const auto bp = quad::make_breakpoints(0.0, kPi, pts);
    const auto res = quad::integrate_panels(integrand, bp, {1e-12});
    if (!(res.value > 0.0)) return 0.0;
    return std::exp(std::log(alpha * inv / kPi) - inv * std::log(x1) + std::log(res.value)) / k;
}

double pdf_tempered_stable(double alpha, double lambda, double c, double x) {
    require(alpha > 0.0 && alpha < 1.0, "pdf_tempered_stable: alpha must lie in (0, 1)");
    require(lambda >= 0.0 && std::isfinite(lambda), "pdf_tempered_stable: lambda must be >= 0");
    require(positive_finite(c), "pdf_tempered_stable: c must be > 0");
    require(x >= 0.0, "pdf_tempered_stable: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double sigma = std::pow(c * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
    const double tilt = -lambda * x + c * std::pow(lambda, alpha);
    if (tilt < -745.0) return 0.0;
    return std::exp(tilt) * pdf_stable(alpha, sigma, x);
}

double pdf_gamma(double a, double c_shape, double x) {
    require(positive_finite(a), "pdf_gamma: a must be > 0");
    require(positive_finite(c_shape), "pdf_gamma: c must be > 0");
    require(x >= 0.0, "pdf_gamma: x must be >= 0");
    if (x == 0.0) {
        if (c_shape < 1.0) return std::numeric_limits<double>::infinity();
        return c_shape == 1.0 ? 1.0 / a : 0.0;
    }
    const double log_p = (c_shape - 1.0) * std::log(x) - x / a - special::log_gamma(c_shape) - c_shape * std::log(a);
    return std::exp(log_p);
}

}  // namespace subdiff::dist
