#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "subdiff/analytics.hpp"
#include "subdiff/error.hpp"
#include "support/gamma_regimes.hpp"

using namespace subdiff;
using namespace subdiff::analytics;
using dist::SubordinatorSpec;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

const SubordinatorSpec kStable = SubordinatorSpec::stable(0.6);
const SubordinatorSpec kTs = SubordinatorSpec::tempered_stable(0.6, 1.0, 1.0);
const SubordinatorSpec kGamma = SubordinatorSpec::gamma(1.0, 0.6);

// int_0^inf dtau / Gamma(tau), 20-digit reference.
constexpr double kFransenRobinson = 2.8077702420285193652;

// (1/(c lambda^alpha)) sum_k P(alpha (k+1), lambda t): termwise integral of the ML series.
double ts_msd_series(double alpha, double lambda, double c, double t) {
    const double x = lambda * t;
    double sum = 0.0;
    for (int k = 0;; ++k) {
        const double s = alpha * (k + 1);
        const double p = boost::math::gamma_p(s, x);
        sum += p;
        if (s > x && p < 1e-18 * sum) break;
    }
    return sum / (c * std::pow(lambda, alpha));
}

// e^(-lambda t) sum_k lambda^(alpha k) t^(alpha k + alpha - 1) / Gamma(alpha (k+1)) / c.
double ts_kernel_series(double alpha, double lambda, double c, double t) {
    double sum = 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double s = alpha * (k + 1);
        const double lt = alpha * k * std::log(lambda) + (s - 1.0) * std::log(t) - lambda * t - boost::math::lgamma(s);
        const double term = std::exp(lt);
        sum += term;
        if (s > lambda * t + 10.0 && term < 1e-18 * sum) break;
    }
    return sum / c;
}

// (1/c) int_0^inf P(sigma, t/a) dsigma.
double gamma_msd_oracle(double a, double c, double t) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double sigma) { return sigma == 0.0 ? 1.0 : boost::math::gamma_p(sigma, t / a); };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity()) / c;
}

// int_1^inf u^tau tau^k dtau = (u/m) sum_j k!/(k-j)! m^(-j), m = -log u.
double f_closed_form(double u, int k) {
    const double m = -std::log(u);
    double sum = 0.0;
    double falling = 1.0;
    for (int j = 0; j <= k; ++j) {
        sum += falling / std::pow(m, j);
        falling *= (k - j);
    }
    return u / m * sum;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    std::vector<double> g;
    const int n = static_cast<int>(std::round(std::log10(hi / lo) * per_decade));
    for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    return g;
}

}  // namespace

TEST_CASE("stable closed forms") {
    CHECK(rel_err(memory_kernel(SubordinatorSpec::stable(0.5), 1.0), 1.0 / std::sqrt(std::numbers::pi)) < 1e-15);
    CHECK(rel_err(msd_analytic(kStable, 2.0), std::pow(2.0, 0.6) / boost::math::tgamma(1.6)) < 1e-14);
    CHECK(msd_analytic(kStable, 2.0) == doctest::Approx(1.6964).epsilon(1e-4));
    for (double alpha : {0.4, 0.6, 0.8}) {
        const auto s = SubordinatorSpec::stable(alpha);
        for (double t : log_grid(1e-3, 1e3, 5)) {
            CHECK(rel_err(msd_analytic(s, t), std::pow(t, alpha) / boost::math::tgamma(alpha + 1.0)) < 1e-12);
            CHECK(rel_err(memory_kernel(s, t), std::pow(t, alpha - 1.0) / boost::math::tgamma(alpha)) < 1e-12);
        }
    }
    CHECK(memory_kernel_limit(kStable) == 0.0);
}

TEST_CASE("covariance is msd of min(s, t)") {
    CHECK(rel_err(covariance_analytic(kStable, 1.0, 3.0), 1.0 / boost::math::tgamma(1.6)) < 1e-14);
    for (const auto& spec : {kStable, kTs, kGamma}) {
        for (auto [s, t] : {std::pair{0.5, 2.0}, std::pair{3.0, 1.0}, std::pair{1.5, 1.5}}) {
            CHECK(covariance_analytic(spec, s, t) == covariance_analytic(spec, t, s));
            CHECK(covariance_analytic(spec, s, t) == msd_analytic(spec, std::min(s, t)));
        }
    }
}

TEST_CASE("tempered stable kernel: oracles and limit") {
    // mpmath, 30 digits: e^-1 E_{0.6,0.6}(1).
    CHECK(rel_err(memory_kernel(kTs, 1.0), 1.7026873477738130) < 1e-11);
    for (double t : {1e-3, 0.05, 0.3, 1.0, 4.0, 15.0}) {
        CAPTURE(t);
        CHECK(rel_err(memory_kernel(kTs, t), ts_kernel_series(0.6, 1.0, 1.0, t)) < 1e-10);
    }
    const auto other = SubordinatorSpec::tempered_stable(0.45, 2.5, 1.7);
    for (double t : {0.01, 0.5, 3.0})
        CHECK(rel_err(memory_kernel(other, t), ts_kernel_series(0.45, 2.5, 1.7, t)) < 1e-10);

    const double limit = std::pow(1.0, 0.4) / 0.6;
    CHECK(rel_err(memory_kernel_limit(kTs), limit) < 1e-14);
    CHECK(rel_err(memory_kernel(kTs, 200.0), limit) < 0.01);
    CHECK(rel_err(memory_kernel_limit(other), std::pow(2.5, 0.55) / (0.45 * 1.7)) < 1e-14);
}

TEST_CASE("tempered stable msd against the incomplete gamma series") {
    for (double t : log_grid(1e-6, 1e3, 3)) {
        CAPTURE(t);
        CHECK(rel_err(msd_analytic(kTs, t), ts_msd_series(0.6, 1.0, 1.0, t)) < 1e-6);
    }
    const auto other = SubordinatorSpec::tempered_stable(0.8, 0.3, 2.0);
    for (double t : {0.01, 1.0, 50.0, 400.0}) {
        CAPTURE(t);
        CHECK(rel_err(msd_analytic(other, t), ts_msd_series(0.8, 0.3, 2.0, t)) < 1e-6);
    }
}

TEST_CASE("gamma kernel and msd oracles") {
    const auto unit = SubordinatorSpec::gamma(1.0, 1.0);
    CHECK(rel_err(memory_kernel(unit, 1.0), std::exp(-1.0) * kFransenRobinson) < 1e-8);
    // a scales time: M_a(t) = M_1(t/a)/a.
    const auto scaled = SubordinatorSpec::gamma(2.0, 1.0);
    CHECK(rel_err(memory_kernel(scaled, 2.0), std::exp(-1.0) * kFransenRobinson / 2.0) < 1e-8);
    for (double t : {1e-4, 1e-2, 0.3, 1.0, 7.0, 60.0}) {
        CAPTURE(t);
        CHECK(rel_err(msd_analytic(kGamma, t), gamma_msd_oracle(1.0, 0.6, t)) < 1e-6);
        CHECK(rel_err(msd_analytic(scaled, t), gamma_msd_oracle(2.0, 1.0, t)) < 1e-6);
    }
    CHECK(rel_err(memory_kernel_limit(kGamma), 1.0 / 0.6) < 1e-14);
    CHECK(rel_err(memory_kernel(kGamma, 300.0), 1.0 / 0.6) < 0.01);
}

TEST_CASE("gamma kernel near t = 0: finite, t M(t) decreasing to 0") {
    // M(t) ~ 1 / (c t log^2(t/a)): the kernel itself diverges, t M(t) vanishes logarithmically.
    double prev = 0.1 * memory_kernel(kGamma, 0.1);
    for (double t : {0.01, 0.001, 1e-4, 1e-6}) {
        const double m = memory_kernel(kGamma, t);
        CAPTURE(t);
        CHECK(std::isfinite(m));
        CHECK(m > 0.0);
        CHECK(t * m < prev);
        prev = t * m;
    }
    const double l = std::log(1e-6);
    CHECK(1e-6 * memory_kernel(kGamma, 1e-6) * l * l * 0.6 == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("property: derivative of the msd is the kernel") {
    for (const auto& spec : {kStable, kTs, kGamma}) {
        for (double t : log_grid(0.1, 10.0, 4)) {
            const double h = 1e-3 * t;
            const double fd = (msd_analytic(spec, t + h) - msd_analytic(spec, t - h)) / (2.0 * h);
            CAPTURE(to_string(spec.family));
            CAPTURE(t);
            CHECK(rel_err(fd, memory_kernel(spec, t)) < 1e-4);
        }
    }
}

TEST_CASE("property: tempered stable degenerates to stable as lambda -> 0") {
    const double lambda = 1e-8;
    const auto ts = SubordinatorSpec::tempered_stable(0.6, lambda, 1.0);
    for (double t : log_grid(0.1, 10.0, 5)) {
        CAPTURE(t);
        CHECK(rel_err(msd_analytic(ts, t), msd_analytic(kStable, t)) < 1e-4);
        // Kernel: first-order correction (lambda t)^alpha Gamma(alpha)/Gamma(2 alpha) - lambda t,
        // which reaches 1.15e-4 at t = 10.
        const double x = lambda * t;
        const double delta = std::pow(x, 0.6) * boost::math::tgamma(0.6) / boost::math::tgamma(1.2) - x;
        const double ratio = memory_kernel(ts, t) / memory_kernel(kStable, t);
        CHECK(std::abs(ratio - 1.0 - delta) < 1e-8);
        if (t <= 8.0) CHECK(std::abs(ratio - 1.0) < 1e-4);
    }
}

TEST_CASE("property: msd starts at 0 and is nondecreasing") {
    for (const auto& spec : {kStable, kTs, kGamma}) {
        CHECK(msd_analytic(spec, 0.0) == 0.0);
        double prev = 0.0;
        for (double t : log_grid(1e-5, 1e3, 4)) {
            const double v = msd_analytic(spec, t);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("gamma asymptotes") {
    CHECK(gamma_msd_asymptote(1.0, 1.0, 100.0, GammaRegime::LargeT) == 100.0);
    CHECK(gamma_msd_asymptote(1.0, 1.0, 0.01, GammaRegime::SmallT) == doctest::Approx(std::exp(-0.01) / std::log(100.0)));
    CHECK_THROWS_AS(gamma_msd_asymptote(1.0, 1.0, 1.0, GammaRegime::SmallT), DomainError);
    CHECK_THROWS_AS(gamma_msd_asymptote(1.0, 1.0, -1.0, GammaRegime::LargeT), DomainError);

    const auto unit = SubordinatorSpec::gamma(1.0, 1.0);
    CHECK(std::abs(msd_analytic(unit, 50.0) / 50.0 - 1.0) < 0.02);
    for (auto [a, c] : {std::pair{1.0, 0.6}, std::pair{0.5, 2.0}}) {
        const double t = 50.0 * a * c;
        CHECK(std::abs(msd_analytic(SubordinatorSpec::gamma(a, c), t) / (t / (a * c)) - 1.0) < 0.02);
    }

    // The small-t ratio settles to a constant: successive decades within 5%.
    for (double a : {1.0, 3.0}) {
        double prev = gamma_small_t_ratio(a, 0.6, 1e-4 * a);
        for (double u : {1e-5, 1e-6}) {
            const double r = gamma_small_t_ratio(a, 0.6, u * a);
            CAPTURE(u);
            CHECK(std::abs(r / prev - 1.0) < 0.05);
            CHECK(r < 0.0);
            prev = r;
        }
    }
    CHECK_THROWS_AS(gamma_small_t_ratio(1.0, 1.0, 2.0), DomainError);
}

TEST_CASE("gamma msd is not a single power law") {
    const auto cmp = testsupport::compare_gamma_regimes(1.0, 0.6);
    CAPTURE(cmp.single_power_law_rms);
    CAPTURE(cmp.two_regime_rms);
    CHECK(cmp.two_regime_rms < cmp.single_power_law_rms);
    CHECK(cmp.small_t_constant > 0.0);
    CHECK(cmp.large_t_constant > 0.0);
}

TEST_CASE("f_recursion: quadrature and closed-form oracles") {
    CHECK(rel_err(f_recursion(0.3, 3), 2.7581008255370504) < 1e-13);
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double u : {0.1, 0.3, 0.5}) {
        for (int k = 1; k <= 4; ++k) {
            auto f = [&](double tau) { return std::isfinite(tau) ? std::exp(tau * std::log(u) + k * std::log(tau)) : 0.0; };
            const double direct = integrator.integrate(f, 1.0, std::numeric_limits<double>::infinity());
            CAPTURE(u);
            CAPTURE(k);
            CHECK(rel_err(f_recursion(u, k), direct) < 1e-8);
            CHECK(rel_err(f_recursion(u, k), f_closed_form(u, k)) < 1e-13);
        }
    }
    CHECK(rel_err(f_recursion(0.5, 0), 0.5 / std::log(2.0)) < 1e-15);
    // Base case k = 1: -u/log u (1 - 1/log u).
    const double l = std::log(0.5);
    CHECK(rel_err(f_recursion(0.5, 1), -0.5 / l * (1.0 - 1.0 / l)) < 1e-15);
}

TEST_CASE("f_recursion: leading-order behaviour as u -> 0") {
    // f log u / (-u) = 1 + k/m + k(k-1)/m^2 + ..., m = -log u: tends to 1 only logarithmically.
    for (int k = 1; k <= 4; ++k) {
        double prev = 1e300;
        for (double u : {1e-2, 1e-6, 1e-20, 1e-100, 1e-300}) {
            const double ratio = f_recursion(u, k) * std::log(u) / -u;
            const double m = -std::log(u);
            CHECK(rel_err(ratio, f_closed_form(u, k) * m / u) < 1e-13);
            CHECK(ratio > 1.0);
            CHECK(ratio < prev);
            CHECK(ratio - 1.0 >= k / m * (1.0 - 1e-12));
            if (k < m) CHECK(ratio <= 1.0 / (1.0 - k / m));
            prev = ratio;
        }
        CHECK(std::abs(f_recursion(1e-300, k) * std::log(1e-300) / -1e-300 - 1.0) < 0.01 * k);
    }
    CHECK_THROWS_AS(f_recursion(0.0, 1), DomainError);
    CHECK_THROWS_AS(f_recursion(1.0, 1), DomainError);
    CHECK_THROWS_AS(f_recursion(0.5, -1), DomainError);
}

TEST_CASE("match_gamma_to_ts") {
    auto m = match_gamma_to_ts(0.6, 1.0, 1.0, 1.0);
    CHECK(m.a == 1.0);
    CHECK(m.c == doctest::Approx(0.6).epsilon(1e-15));
    m = match_gamma_to_ts(0.5, 4.0, 2.0, 0.5);
    CHECK(m.a == 0.5);
    CHECK(m.c == doctest::Approx(1.0).epsilon(1e-15));
    const auto ts = SubordinatorSpec::tempered_stable(0.7, 2.0, 3.0);
    m = match_gamma_to_ts(0.7, 2.0, 3.0, 0.25);
    CHECK(rel_err(SubordinatorSpec::gamma(m.a, m.c).unit_mean(), ts.unit_mean()) < 1e-15);
    CHECK_THROWS_AS(match_gamma_to_ts(0.6, 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(match_gamma_to_ts(1.2, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(match_gamma_to_ts(0.6, -1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("analytic evaluators: argument errors") {
    CHECK_THROWS_AS(memory_kernel(kTs, 0.0), DomainError);
    CHECK_THROWS_AS(memory_kernel(kGamma, -1.0), DomainError);
    CHECK_THROWS_AS(msd_analytic(kTs, -1.0), DomainError);
    CHECK_THROWS_AS(msd_analytic(kStable, std::nan("")), DomainError);
    CHECK_THROWS_AS(covariance_analytic(kStable, -1.0, 1.0), DomainError);
}
