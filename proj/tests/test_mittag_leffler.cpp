#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "doctest.h"
#include "subdiff/error.hpp"
#include "subdiff/special_fns.hpp"

using namespace subdiff;
using namespace subdiff::special;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Tolerance used by mittag_leffler to accept a result.
double accept_tol(double alpha, double z, double value, const MlOptions& opt = {}) {
    const double cond = z > 0.0 ? 1.0 + std::pow(z, 1.0 / alpha) / alpha : 1.0;
    return std::max(opt.abs_tol, (opt.rel_tol + 8.0 * 0x1.0p-52 * cond) * std::abs(value));
}

// E_{alpha,beta}(z) grows like exp(z^(1/alpha)); keep grids inside the double range.
bool representable(double alpha, double z) { return z <= 0.0 || std::pow(z, 1.0 / alpha) < 600.0; }

MlOptions forced(MlRegime r) {
    MlOptions o;
    o.force = r;
    return o;
}

}  // namespace

TEST_CASE("mittag_leffler: reference values") {
    // 40-digit references from direct series summation.
    CHECK(rel_err(mittag_leffler(0.6, 0.6, 2.0).value, 63.32992077167830634) < 1e-12);
    CHECK(rel_err(mittag_leffler(0.6, 0.6, 1.0).value, 4.628384077000682614) < 1e-12);
    CHECK(std::abs(mittag_leffler(0.6, 0.6, -3.0).value - 0.031693926561557027) < 1e-10);
    CHECK(std::abs(mittag_leffler(0.8, 1.5, -4.0).value - 0.19432625406215133) < 1e-10);
    CHECK(rel_err(mittag_leffler(0.3, 0.9, 3.0).value, 3.92343959961253031594e17) < 1e-12);
}

TEST_CASE("mittag_leffler: trivial cases") {
    const auto r0 = mittag_leffler(0.7, 0.7, 0.0);
    CHECK(rel_err(r0.value, 0.770383183866566) < 1e-13);
    CHECK(r0.regime == MlRegime::Series);
    CHECK(std::abs(mittag_leffler(0.9999, 1.0, 1.0).value - std::numbers::e) < 1e-3);
}

TEST_CASE("mittag_leffler: E_{1/2,1}(z) = exp(z^2) erfc(-z) across all regimes") {
    bool seen[3] = {false, false, false};
    for (double z = -25.0; z <= 25.0; z += 0.173) {
        const double ref = z < 0.0 ? std::exp(z * z) * std::erfc(-z) : std::exp(z * z) * (2.0 - std::erfc(z));
        const auto r = mittag_leffler(0.5, 1.0, z);
        seen[static_cast<int>(r.regime)] = true;
        CHECK(std::abs(r.value - ref) <= r.est_abs_error + 1e-13 * std::abs(ref));
        CHECK(std::abs(r.value - ref) <= 1e-10 + 1e-12 * std::abs(ref));
    }
    // exp(z^2) erfc(|z|) past the range of the closed form, 40-digit references.
    const double far[][2] = {{-30.0, 0.018795888861416751497},
                             {-40.0, 0.014100335983377813625},
                             {-60.0, 0.0094018542751763885888},
                             {-100.0, 0.0056416137829894329036}};
    for (const auto& [z, ref] : far) {
        const auto r = mittag_leffler(0.5, 1.0, z);
        seen[static_cast<int>(r.regime)] = true;
        CHECK(std::abs(r.value - ref) <= 1e-10);
    }
    CHECK(seen[static_cast<int>(MlRegime::Series)]);
    CHECK(seen[static_cast<int>(MlRegime::IntegralRep)]);
    CHECK(seen[static_cast<int>(MlRegime::AsymptoticExpansion)]);
}

TEST_CASE("mittag_leffler: regime selection") {
    CHECK(mittag_leffler(0.6, 0.6, 3.0).regime == MlRegime::Series);
    CHECK(mittag_leffler(0.6, 0.6, -2.0).regime == MlRegime::Series);
    CHECK(mittag_leffler(0.6, 0.6, 15.0).regime == MlRegime::IntegralRep);
    CHECK(mittag_leffler(0.6, 0.6, -15.0).regime == MlRegime::IntegralRep);
    CHECK(mittag_leffler(0.6, 0.6, -300.0).regime == MlRegime::AsymptoticExpansion);
    const double th = ml_asymptotic_threshold(0.9, 0.9);
    CHECK(th > 5.0);
    CHECK(mittag_leffler(0.9, 0.9, 1.01 * th).regime == MlRegime::AsymptoticExpansion);
    CHECK(mittag_leffler(0.9, 0.9, 0.99 * th).regime == MlRegime::IntegralRep);
    CHECK(mittag_leffler(0.9, 0.9, -1.01 * th).regime == MlRegime::AsymptoticExpansion);
    // Deterministic.
    for (double z : {0.3, 7.0, -40.0, -999.0}) {
        const auto a = mittag_leffler(0.45, 0.8, z);
        const auto b = mittag_leffler(0.45, 0.8, z);
        CHECK(a.regime == b.regime);
        CHECK(a.value == b.value);
        CHECK(a.terms_used == b.terms_used);
    }
}

TEST_CASE("mittag_leffler: est_abs_error within tolerance on success") {
    const MlOptions opt;
    for (double alpha : {0.2, 0.5, 0.8})
        for (double beta : {0.3, 1.0, 1.15})
            for (double z : {-100.0, -8.0, -1.0, 0.5, 4.0, 9.0, 60.0}) {
                if (!representable(alpha, z)) {
                    CHECK_THROWS_AS(mittag_leffler(alpha, beta, z), OverflowError);
                    continue;
                }
                const auto r = mittag_leffler(alpha, beta, z);
                CHECK(r.est_abs_error >= 0.0);
                CHECK(r.est_abs_error <= accept_tol(alpha, z, r.value, opt));
            }
}

TEST_CASE("ml_kernel_K: value and integral representation") {
    CHECK(rel_err(ml_kernel_K(0.6, 0.6, 1.0, 1.0), 0.07089823768327803) < 1e-13);
    // beta = (1 + alpha)/2: both sine factors equal cos(pi alpha/2), so the numerator is proportional to r - z.
    CHECK(std::abs(ml_kernel_K(0.6, 0.8, 2.5, 2.5)) < 1e-16);
    CHECK(ml_kernel_K(0.6, 0.8, 1.0, 2.0) < 0.0);
    CHECK(ml_kernel_K(0.6, 0.8, 3.0, 2.0) > 0.0);
    CHECK(rel_err(ml_kernel_K(0.6, 0.8, 1.0, 2.0) / ml_kernel_K(0.6, 0.8, 1.0, -2.0),
                  -(1.0 * 1.0 + 2.0 * 1.0 * 2.0 * std::cos(0.6 * std::numbers::pi) + 4.0) /
                      (1.0 - 2.0 * 2.0 * std::cos(0.6 * std::numbers::pi) + 4.0) / 3.0) < 1e-13);

    const double alpha = 0.6, beta = 0.6, z = 2.0;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate([&](double r) { return ml_kernel_K(alpha, beta, r, z); }, 1e-12);
    const double boundary = std::pow(z, (1.0 - beta) / alpha) * std::exp(std::pow(z, 1.0 / alpha)) / alpha;
    CHECK(rel_err(integral + boundary, 63.32992077167830634) < 1e-9);
    CHECK(rel_err(mittag_leffler(alpha, beta, z, forced(MlRegime::IntegralRep)).value, 63.32992077167830634) < 1e-12);
}

TEST_CASE("ml_kernel_K: domain errors") {
    CHECK_THROWS_AS(ml_kernel_K(1.2, 0.6, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ml_kernel_K(0.6, 1.7, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ml_kernel_K(0.6, 0.6, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ml_kernel_K(0.6, 0.6, 1.0, 0.0), DomainError);
}

TEST_CASE("property: series and integral branches agree on |z| <= 5") {
    int compared = 0;
    double worst = 0.0;
    for (double alpha = 0.1; alpha < 0.95; alpha += 0.1) {
        for (double bf = 0.05; bf < 1.0; bf += 0.15) {
            const double beta = bf * (1.0 + alpha);
            for (double z = -5.0; z <= 5.0; z += 0.25) {
                if (z == 0.0) continue;
                if (!representable(alpha, z)) continue;
                MlEvalReport s, q;
                try {
                    s = mittag_leffler(alpha, beta, z, forced(MlRegime::Series));
                    q = mittag_leffler(alpha, beta, z, forced(MlRegime::IntegralRep));
                } catch (const ConvergenceError&) {
                    continue;
                }
                // Converged in the absolute sense the comparison is stated in.
                if (s.est_abs_error > 1e-9 || q.est_abs_error > 1e-9) continue;
                ++compared;
                worst = std::max(worst, std::abs(s.value - q.value));
            }
        }
    }
    CHECK(compared > 1000);
    CHECK(worst <= 1e-8);
}

TEST_CASE("property: asymptotic and integral branches agree past the threshold") {
    for (double alpha : {0.3, 0.6, 0.9}) {
        for (double beta : {0.5, alpha, 1.0}) {
            const double th = ml_asymptotic_threshold(alpha, beta);
            for (double z : {-2.0 * th, -1.1 * th, 1.1 * th, 1.5 * th}) {
                // Compare exp(-z^(1/alpha)) E for z > 0 so large thresholds stay representable.
                const double shift = z > 0.0 ? std::pow(z, 1.0 / alpha) : 0.0;
                const auto a = mittag_leffler_scaled(alpha, beta, z, shift, forced(MlRegime::AsymptoticExpansion));
                const auto q = mittag_leffler_scaled(alpha, beta, z, shift, forced(MlRegime::IntegralRep));
                CAPTURE(alpha);
                CAPTURE(beta);
                CAPTURE(z);
                CHECK(std::abs(a.value - q.value) <= 2e-10 + 2.0 * accept_tol(alpha, z, q.value, {}));
            }
        }
    }
}

TEST_CASE("property: E positive and increasing for z >= 0") {
    for (double alpha : {0.15, 0.5, 0.85}) {
        for (double beta : {0.2, 1.0, 1.6}) {
            double prev = mittag_leffler(alpha, beta, 0.0).value;
            CHECK(prev > 0.0);
            for (double z = 0.05; representable(alpha, z); z *= 1.25) {
                const double v = mittag_leffler(alpha, beta, z).value;
                CHECK(v > prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("mittag_leffler_scaled: consistent with the unscaled value and finite past overflow") {
    for (double z : {-20.0, -2.0, 1.0, 4.0, 12.0, 40.0}) {
        const double shift = 0.7 * std::abs(z);
        const double plain = mittag_leffler(0.6, 0.6, z).value;
        const double scaled = mittag_leffler_scaled(0.6, 0.6, z, shift).value;
        CHECK(std::abs(scaled - std::exp(-shift) * plain) <= 1e-10 + 1e-12 * std::abs(scaled));
    }
    const double z = 2000.0;
    CHECK_THROWS_AS(mittag_leffler(0.6, 0.6, z), OverflowError);
    const double shift = std::pow(z, 1.0 / 0.6);
    const auto r = mittag_leffler_scaled(0.6, 0.6, z, shift);
    CHECK(std::isfinite(r.value));
    CHECK(rel_err(r.value, std::pow(z, (1.0 - 0.6) / 0.6) / 0.6) < 1e-13);
}

TEST_CASE("mittag_leffler: errors") {
    CHECK_THROWS_AS(mittag_leffler(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(mittag_leffler(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(mittag_leffler(0.5, 1.8, 8.0, forced(MlRegime::IntegralRep)), ConvergenceError);
    MlOptions tight;
    tight.abs_tol = 1e-30;
    tight.rel_tol = 1e-30;
    CHECK_THROWS_AS(mittag_leffler(0.6, 0.6, -15.0, tight), ConvergenceError);
}
