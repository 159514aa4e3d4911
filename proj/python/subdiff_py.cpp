#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "subdiff/analytics.hpp"
#include "subdiff/distributions.hpp"
#include "subdiff/error.hpp"
#include "subdiff/special_fns.hpp"
#include "subdiff/subordination.hpp"

namespace py = pybind11;
using namespace subdiff;
using dist::SubordinatorSpec;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
    auto r = a.unchecked<1>();
    std::vector<double> v(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) v[static_cast<std::size_t>(i)] = r(i);
    return v;
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

template <class F>
Array vectorize(const Array& t, F f) {
    auto in = t.unchecked<1>();
    Array out(in.shape(0));
    auto o = out.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = f(in(i));
    return out;
}

py::dict curve_dict(const analytics::MsdCurve& c) {
    py::dict d;
    d["t"] = to_array(c.t_grid);
    d["msd"] = to_array(c.values);
    d["std_error"] = to_array(c.std_error);
    d["kind"] = analytics::to_string(c.kind);
    return d;
}

}  // namespace

PYBIND11_MODULE(_subdiff, m) {
    m.doc() = "Subordinated Brownian motion: laws, simulation and mean squared displacement";

    auto base = py::register_exception<Error>(m, "SubdiffError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
    py::register_exception<CoverageError>(m, "CoverageError", base.ptr());
    py::register_exception<GridError>(m, "GridError", base.ptr());

    py::enum_<dist::Family>(m, "Family")
        .value("Stable", dist::Family::Stable)
        .value("TemperedStable", dist::Family::TemperedStable)
        .value("Gamma", dist::Family::Gamma);

    py::class_<SubordinatorSpec>(m, "Spec")
        .def_static("stable", &SubordinatorSpec::stable, py::arg("alpha"))
        .def_static("tempered_stable", &SubordinatorSpec::tempered_stable, py::arg("alpha"), py::arg("lam"),
                    py::arg("c") = 1.0)
        .def_static("gamma", &SubordinatorSpec::gamma, py::arg("a"), py::arg("c"))
        .def_readonly("family", &SubordinatorSpec::family)
        .def_readonly("alpha", &SubordinatorSpec::alpha)
        .def_readonly("lam", &SubordinatorSpec::lambda)
        .def_readonly("c", &SubordinatorSpec::c)
        .def_readonly("a", &SubordinatorSpec::a)
        .def("unit_mean", &SubordinatorSpec::unit_mean)
        .def("levy_exponent", [](const SubordinatorSpec& s, double z) { return dist::levy_exponent(s, z); })
        .def(py::self == py::self)
        .def("__repr__", [](const SubordinatorSpec& s) {
            return py::str("Spec({}, alpha={}, lam={}, c={}, a={})")
                .format(dist::to_string(s.family), s.alpha, s.lambda, s.c, s.a);
        });

    m.def(
        "mittag_leffler",
        [](double alpha, double beta, double z) { return special::mittag_leffler(alpha, beta, z).value; },
        py::arg("alpha"), py::arg("beta"), py::arg("z"));

    m.def("pdf_stable", &dist::pdf_stable, py::arg("alpha"), py::arg("sigma"), py::arg("x"));
    m.def("pdf_tempered_stable", &dist::pdf_tempered_stable, py::arg("alpha"), py::arg("lam"), py::arg("c"),
          py::arg("x"));
    m.def("pdf_gamma", &dist::pdf_gamma, py::arg("a"), py::arg("c"), py::arg("x"));

    m.def(
        "sample_increments",
        [](const SubordinatorSpec& s, double scale_t, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            std::vector<double> v(n);
            for (auto& x : v) x = dist::sample_increment(s, scale_t, rng);
            return to_array(v);
        },
        py::arg("spec"), py::arg("scale_t"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

    m.def(
        "msd_analytic", [](const SubordinatorSpec& s, const Array& t) {
            return vectorize(t, [&](double x) { return analytics::msd_analytic(s, x); });
        },
        py::arg("spec"), py::arg("t"));
    m.def(
        "memory_kernel", [](const SubordinatorSpec& s, const Array& t) {
            return vectorize(t, [&](double x) { return analytics::memory_kernel(s, x); });
        },
        py::arg("spec"), py::arg("t"));
    m.def("memory_kernel_limit", &analytics::memory_kernel_limit, py::arg("spec"));
    m.def("covariance_analytic", &analytics::covariance_analytic, py::arg("spec"), py::arg("s"), py::arg("t"));
    m.def("f_recursion", &analytics::f_recursion, py::arg("u"), py::arg("k"));
    m.def(
        "match_gamma_to_ts",
        [](double alpha, double lam, double c, double a) {
            const auto g = analytics::match_gamma_to_ts(alpha, lam, c, a);
            return py::make_tuple(g.a, g.c);
        },
        py::arg("alpha"), py::arg("lam"), py::arg("c") = 1.0, py::arg("a") = 1.0);

    m.def(
        "simulate_ensemble",
        [](const SubordinatorSpec& s, const Array& t_grid, double dtau, std::size_t n, std::uint64_t seed,
           unsigned workers) {
            const auto grid = to_vector(t_grid);
            std::vector<sub::Trajectory> ens;
            {
                py::gil_scoped_release release;
                ens = sub::simulate_ensemble(s, grid, dtau, n, seed, workers);
            }
            Array S({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(grid.size())});
            Array Y({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(grid.size())});
            auto ms = S.mutable_unchecked<2>();
            auto my = Y.mutable_unchecked<2>();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    ms(i, k) = ens[i].s_values[k];
                    my(i, k) = ens[i].y_values[k];
                }
            return py::make_tuple(S, Y);
        },
        py::arg("spec"), py::arg("t_grid"), py::arg("dtau"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1,
        "Returns (S, Y), each of shape (n, len(t_grid)).");

    m.def(
        "msd_ensemble",
        [](const SubordinatorSpec& s, const Array& t_grid, double dtau, std::size_t n, std::uint64_t seed,
           unsigned workers) {
            const auto grid = to_vector(t_grid);
            analytics::MsdCurve c;
            {
                py::gil_scoped_release release;
                const auto ens = sub::simulate_ensemble(s, grid, dtau, n, seed, workers);
                c = analytics::msd_ensemble(ens, grid);
            }
            return curve_dict(c);
        },
        py::arg("spec"), py::arg("t_grid"), py::arg("dtau"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);

    m.def(
        "msd_time_avg",
        [](const SubordinatorSpec& s, const Array& t_grid, double dtau, const Array& lags, std::uint64_t seed) {
            const auto grid = to_vector(t_grid);
            const auto l = to_vector(lags);
            analytics::MsdCurve c;
            {
                py::gil_scoped_release release;
                auto rng = sub::RngPair::for_trajectory(seed, 0);
                const auto tr = sub::simulate_trajectory(s, grid, dtau, rng);
                c = analytics::msd_time_avg(tr, l, grid.back());
            }
            return curve_dict(c);
        },
        py::arg("spec"), py::arg("t_grid"), py::arg("dtau"), py::arg("lags"), py::arg("seed"));

    m.def(
        "fit_power_law",
        [](const Array& t, const Array& y, double lo, double hi) {
            analytics::MsdCurve c;
            c.t_grid = to_vector(t);
            c.values = to_vector(y);
            const auto f = analytics::fit_power_law(c, lo, hi);
            py::dict d;
            d["exponent"] = f.exponent;
            d["log_prefactor"] = f.log_prefactor;
            d["rms_residual"] = f.rms_residual;
            d["n_points"] = f.n_points;
            return d;
        },
        py::arg("t"), py::arg("msd"), py::arg("t_lo"), py::arg("t_hi"));
}
