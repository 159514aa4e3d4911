#include <cmath>
#include <sstream>

#include "subdiff/analytics.hpp"
#include "subdiff/error.hpp"

namespace subdiff::analytics {

namespace {

constexpr double kGridTol = 1e-9;

class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Index k with |k h - x| small relative to h, or -1.
long grid_index(double x, double h) {
    const double k = std::round(x / h);
    if (std::abs(k * h - x) > kGridTol * std::max(h, std::abs(x))) return -1;
    return static_cast<long>(k);
}

}  // namespace

const char* to_string(MsdKind k) {
    switch (k) {
        case MsdKind::EnsembleAvg: return "ensemble";
        case MsdKind::TimeAvg: return "timeavg";
        case MsdKind::Analytic: return "analytic";
    }
    return "?";
}

MsdCurve msd_ensemble(std::span<const sub::Trajectory> trajectories, std::span<const double> t_grid) {
    if (trajectories.size() < 2) throw DomainError("msd_ensemble: need at least 2 trajectories");
    const std::size_t m = t_grid.size();
    for (const auto& tr : trajectories) {
        if (tr.y_values.size() != m || tr.t_grid.size() != m) throw GridError("msd_ensemble: trajectory grid size mismatch");
        for (std::size_t i = 0; i < m; ++i)
            if (tr.t_grid[i] != t_grid[i]) throw GridError("msd_ensemble: trajectory grid differs from t_grid");
    }
    MsdCurve out;
    out.kind = MsdKind::EnsembleAvg;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    out.values.resize(m);
    out.std_error.resize(m);
    out.ensemble_size = trajectories.size();
    const double n = static_cast<double>(trajectories.size());
    for (std::size_t i = 0; i < m; ++i) {
        NeumaierSum s;
        for (const auto& tr : trajectories) s.add(tr.y_values[i] * tr.y_values[i]);
        const double mean = s.value() / n;
        NeumaierSum ss;
        for (const auto& tr : trajectories) {
            const double d = tr.y_values[i] * tr.y_values[i] - mean;
            ss.add(d * d);
        }
        out.values[i] = mean;
        out.std_error[i] = std::sqrt(ss.value() / (n - 1.0) / n);
    }
    return out;
}

MsdCurve msd_time_avg(const sub::Trajectory& trajectory, std::span<const double> lags, double T) {
    const auto& t = trajectory.t_grid;
    const auto& y = trajectory.y_values;
    if (t.size() < 3 || y.size() != t.size()) throw GridError("msd_time_avg: trajectory too short");
    if (t.front() != 0.0) throw GridError("msd_time_avg: grid must start at 0");
    const double h = t[1] - t[0];
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - h) > kGridTol * std::max(h, t[i]))
            throw GridError("msd_time_avg: grid is not uniform");
    }
    if (!(T > 0.0)) throw DomainError("msd_time_avg: T must be > 0");
    const long m = grid_index(T, h);
    if (m < 0 || m >= static_cast<long>(t.size())) throw GridError("msd_time_avg: T is not a grid point");

    MsdCurve out;
    out.kind = MsdKind::TimeAvg;
    out.series_length = T;
    for (double lag : lags) {
        if (!(lag > 0.0) || !(lag < T)) throw DomainError("msd_time_avg: lag must lie in (0, T)");
        const long k = grid_index(lag, h);
        if (k <= 0) throw GridError("msd_time_avg: lag is not a multiple of the grid step");
        if (k >= m) throw DomainError("msd_time_avg: lag must lie in (0, T)");
        NeumaierSum s;
        const long last = m - k;
        for (long j = 0; j <= last; ++j) {
            const double d = y[j + k] - y[j];
            s.add(j == 0 || j == last ? 0.5 * d * d : d * d);
        }
        const double span = static_cast<double>(last) * h;
        out.t_grid.push_back(static_cast<double>(k) * h);
        out.values.push_back(h * s.value() / span);
    }
    return out;
}

MsdCurve msd_analytic_curve(const dist::SubordinatorSpec& spec, std::span<const double> t_grid) {
    MsdCurve out;
    out.kind = MsdKind::Analytic;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    out.values.reserve(t_grid.size());
    for (double t : t_grid) out.values.push_back(msd_analytic(spec, t));
    return out;
}

PowerLawFit fit_power_law(const MsdCurve& curve, double t_lo, double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("fit_power_law: need 0 < t_lo < t_hi");
    if (curve.values.size() != curve.t_grid.size()) throw GridError("fit_power_law: curve size mismatch");
    const double lo = t_lo * (1.0 - 1e-12);
    const double hi = t_hi * (1.0 + 1e-12);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
        const double t = curve.t_grid[i];
        if (t < lo || t > hi) continue;
        if (!(curve.values[i] > 0.0)) {
            std::ostringstream os;
            os << "fit_power_law: non-positive value at t = " << t;
            throw DomainError(os.str());
        }
        xs.push_back(std::log(t));
        ys.push_back(std::log(curve.values[i]));
    }
    if (xs.size() < 5) throw DomainError("fit_power_law: need at least 5 points in the window");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_power_law: degenerate window");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.n_points = xs.size();
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.log_prefactor + fit.exponent * xs[i]);
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / n);
    return fit;
}

std::vector<FitWindow> default_fit_windows(dist::Family family, double t_min, double t_max) {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("default_fit_windows: need 0 < t_min < t_max");
    switch (family) {
        case dist::Family::Stable: return {{"full", t_min, t_max}};
        case dist::Family::TemperedStable:
            return {{"small", t_min, std::min(t_max, 100.0 * t_min)}, {"large", std::max(t_min, t_max / 100.0), t_max}};
        case dist::Family::Gamma: return {{"large", std::max(t_min, t_max / 100.0), t_max}};
    }
    return {};
}

}  // namespace subdiff::analytics
