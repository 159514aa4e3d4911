#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "subdiff/rng.hpp"

namespace subdiff::dist {

enum class Family { Stable, TemperedStable, Gamma };

const char* to_string(Family f);
/// Accepts "stable", "ts"/"tempered"/"tempered_stable", "gamma" (case-insensitive).
Family parse_family(std::string_view name);

/// Subordinator increment law. Fields not used by a family are ignored.
///   Stable:          Psi(z) = z^alpha
///   TemperedStable:  Psi(z) = c ((lambda + z)^alpha - lambda^alpha)
///   Gamma:           Psi(z) = c log(1 + a z)
struct SubordinatorSpec {
    Family family = Family::Stable;
    double alpha = 0.6;
    double lambda = 1.0;
    double c = 1.0;
    double a = 1.0;

    static SubordinatorSpec stable(double alpha);
    static SubordinatorSpec tempered_stable(double alpha, double lambda, double c);
    static SubordinatorSpec gamma(double a, double c);

    /// Throws DomainError unless the parameters of `family` are valid.
    void validate() const;

    /// <U(1)>; +inf for the stable family.
    double unit_mean() const;

    bool operator==(const SubordinatorSpec&) const = default;
};

double levy_exponent(const SubordinatorSpec& spec, double z);

struct SamplerStats {
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
};

struct TemperedStableOptions {
    /// Attempts allowed per accepted piece before BudgetError.
    std::uint64_t max_attempts = 10'000'000;
    /// Split the increment into pieces when exp(-scale c lambda^alpha) drops below this.
    double split_threshold = 0.1;
};

/// Positive stable variate with E exp(-zX) = exp(-scale_t z^alpha) (Kanter's representation).
double sample_stable_increment(double alpha, double scale_t, RngStream& rng);

/// Tempered stable variate with E exp(-zX) = exp(-scale_t c ((lambda+z)^alpha - lambda^alpha)),
/// drawn by exponential tilting of a stable proposal.
double sample_tempered_stable(double alpha, double lambda, double c, double scale_t, RngStream& rng,
                              SamplerStats* stats = nullptr, const TemperedStableOptions& opt = {});

/// Gamma variate with shape c*scale_t and scale a (Marsaglia-Tsang, boosted for shape < 1).
/// Values below the smallest normal double are returned as that value.
double sample_gamma_increment(double a, double c, double scale_t, RngStream& rng);

/// Increment U(tau + scale_t) - U(tau) of the subordinator described by `spec`.
double sample_increment(const SubordinatorSpec& spec, double scale_t, RngStream& rng);

/// Density of the totally skewed stable law S(alpha, sigma, 1, 0), 0 < alpha < 1.
double pdf_stable(double alpha, double sigma, double x);

/// sigma of S(alpha, sigma, 1, 0) whose Laplace transform is exp(-scale z^alpha).
double stable_sigma_for_scale(double alpha, double scale);

/// exp(-lambda x + c lambda^alpha) * pdf_stable(alpha, (c cos(pi alpha/2))^(1/alpha), x); lambda >= 0.
double pdf_tempered_stable(double alpha, double lambda, double c, double x);

/// x^(c-1) e^(-x/a) / (Gamma(c) a^c).
double pdf_gamma(double a, double c_shape, double x);

}  // namespace subdiff::dist
