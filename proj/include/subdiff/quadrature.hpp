#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace subdiff::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    double l1 = 0.0;  // integral of |f|, used for relative tolerances
};

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    /// Maximum number of panel bisections across the whole integral.
    unsigned max_subdivisions = 4000;
};

/// Globally adaptive Gauss-Kronrod (21 point) integration of f over the panels
/// [p0,p1], [p1,p2], ... given by sorted breakpoints. The panel with the largest
/// error estimate is bisected until the total estimate is below
/// max(abs_tol, rel_tol * L1) or the subdivision budget is spent.
template <class F>
Result integrate_panels(F&& f, std::span<const double> breakpoints, Options opt = {}) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    struct Panel {
        double a, b, value, err, l1;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto eval = [&](double a, double b) {
        Panel p{a, b, 0.0, 0.0, 0.0};
        p.value = GK::integrate(f, a, b, 0, 0.0, &p.err, &p.l1);
        return p;
    };
    std::priority_queue<Panel> heap;
    Result out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) continue;
        Panel p = eval(a, b);
        out.value += p.value;
        out.abs_error += p.err;
        out.l1 += p.l1;
        heap.push(p);
    }
    for (unsigned n = 0; n < opt.max_subdivisions && !heap.empty(); ++n) {
        if (out.abs_error <= std::max(opt.abs_tol, opt.rel_tol * out.l1)) break;
        const Panel top = heap.top();
        const double mid = 0.5 * (top.a + top.b);
        if (!(mid > top.a && mid < top.b)) break;
        heap.pop();
        const Panel left = eval(top.a, mid);
        const Panel right = eval(mid, top.b);
        out.value += left.value + right.value - top.value;
        out.abs_error += left.err + right.err - top.err;
        out.l1 += left.l1 + right.l1 - top.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    out = Result{};
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.abs_error += heap.top().err;
        out.l1 += heap.top().l1;
        heap.pop();
    }
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, Options opt = {}) {
    const double pts[2] = {a, b};
    return integrate_panels(std::forward<F>(f), std::span<const double>(pts, 2), opt);
}

/// Sorted, deduplicated breakpoints restricted to [lo, hi], always including both ends.
inline std::vector<double> make_breakpoints(double lo, double hi, std::vector<double> interior) {
    interior.push_back(lo);
    interior.push_back(hi);
    std::erase_if(interior, [&](double x) { return !(x >= lo && x <= hi) || !std::isfinite(x); });
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    return interior;
}

/// Log-spaced points lo*ratio^k in (lo, hi).
inline std::vector<double> log_points(double lo, double hi, double ratio) {
    std::vector<double> pts;
    for (double x = lo * ratio; x < hi; x *= ratio) pts.push_back(x);
    return pts;
}

}  // namespace subdiff::quad
