#include "farey/cf.hpp"
#include "farey/counting.hpp"
#include "farey/errors.hpp"
#include "farey/geoflow.hpp"
#include "farey/measures.hpp"
#include "farey/periodic.hpp"
#include "farey/transfer.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace farey;

namespace {

py::int_ to_py(const Integer& v) { return py::int_(py::str(v.str())); }

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(boost::multiprecision::numerator(r)), to_py(boost::multiprecision::denominator(r)));
}

py::dict point_dict(const PeriodicPoint& p) {
    py::dict d;
    d["period"] = std::vector<Digit>(p.period.digits().begin(), p.period.digits().end());
    d["k"] = p.shift;
    d["omega"] = p.value.to_double();
    d["omega_tilde"] = p.tilde.to_double();
    d["omega_decimal"] = p.value.to_decimal(30);
    d["length"] = p.length;
    d["even_trace"] = to_py(p.even_trace);
    d["parity"] = to_string(p.parity);
    d["per"] = p.per;
    return d;
}

py::dict report_dict(const CountReport& r) {
    py::dict d;
    d["kind"] = to_string(r.kind);
    d["size"] = r.size;
    d["a"] = r.a;
    d["b"] = r.b;
    d["count"] = r.count;
    d["main_term"] = r.main_term;
    d["relative_error"] = r.relative_error();
    d["normalized_main"] = r.normalized_main;
    d["residual"] = r.residual;
    d["scaled_residual"] = r.scaled_residual;
    return d;
}

CountOptions count_options(unsigned threads, std::size_t max_points, double region_floor) {
    CountOptions o;
    o.threads = threads;
    o.max_points = max_points;
    o.region_floor = region_floor;
    return o;
}

}  // namespace

PYBIND11_MODULE(farey_periodic, m) {
    m.doc() = "Periodic points of the Gauss and Farey maps";

    py::register_exception<DegenerateRegion>(m, "DegenerateRegion", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<NotInStarSet>(m, "NotInStarSet", PyExc_ValueError);

    m.def(
        "convergent_matrix",
        [](const std::vector<Digit>& digits) {
            const auto c = convergent_matrix(CFWord(digits));
            return py::make_tuple(py::make_tuple(to_py(c.q_n), to_py(c.p_n)),
                                  py::make_tuple(to_py(c.q_prev), to_py(c.p_prev)));
        },
        py::arg("digits"), "[[q_n, p_n], [q_{n-1}, p_{n-1}]] of a digit word");
    m.def(
        "evaluate", [](const std::vector<Digit>& digits) { return to_fraction(evaluate(CFWord(digits))); },
        py::arg("digits"), "value of the finite continued fraction as a Fraction");
    m.def(
        "cylinder",
        [](const std::vector<Digit>& digits) {
            const auto c = cylinder(CFWord(digits));
            return py::make_tuple(to_fraction(c.lower), to_fraction(c.upper));
        },
        py::arg("digits"));

    m.def(
        "length",
        [](const std::vector<Digit>& period) {
            const auto v = length_of(CFWord(period));
            py::dict d;
            d["via_orbit"] = v.via_orbit;
            d["via_eigenvalue"] = v.via_eigenvalue;
            d["even_trace"] = to_py(v.even_trace);
            d["parity"] = to_string(v.parity);
            return d;
        },
        py::arg("period"), "length of the Gauss point with the given period");

    m.def(
        "enumerate_points",
        [](double T, const std::string& map, unsigned threads, std::size_t max_points) {
            if (map != "gauss" && map != "farey") throw InvalidArgument("map must be gauss or farey");
            EnumerationOptions o{threads, max_points};
            const auto pts = map == "gauss" ? enumerate_gauss(T, o) : enumerate_farey(T, o);
            py::list out;
            for (const auto& p : pts) out.append(point_dict(p));
            return out;
        },
        py::arg("T"), py::arg("map") = "gauss", py::arg("threads") = 1, py::arg("max_points") = 0);
    m.def(
        "count_farey_points", [](double T, unsigned threads) { return to_py(count_farey_points(T, {threads, 0})); },
        py::arg("T"), py::arg("threads") = 1);

    m.def(
        "equidist",
        [](double T, unsigned threads) {
            const auto pts = enumerate_farey(T, {threads, 0});
            const auto m1 = EmpiricalMeasure1D::farey_weighted(pts, threads);
            py::dict d;
            d["mean"] = m1.integrate(TestFunction1D::identity());
            d["cdf_distance"] = cdf_distance(m1, ReferenceMeasure::lebesgue());
            return d;
        },
        py::arg("T"), py::arg("threads") = 1, "mean and CDF distance of the weighted Farey points");

    m.def(
        "verify_section",
        [](std::size_t samples, std::uint64_t seed) {
            const auto r = verify_section(samples, seed);
            py::dict d;
            d["samples"] = r.samples;
            d["max_coordinate_error"] = r.max_coordinate_error;
            d["max_time_error"] = r.max_time_error;
            d["max_flow_error"] = r.max_flow_error;
            return d;
        },
        py::arg("samples") = 10000, py::arg("seed") = 42);
    m.def(
        "return_time",
        [](double U, double W, int eps) {
            SectionPoint s{U, W, eps};
            s.validate();
            const auto r = first_return(s);
            return py::make_tuple(static_cast<double>(r.time), static_cast<double>(return_time_formula(U, W)));
        },
        py::arg("U"), py::arg("W"), py::arg("eps") = 1, "(flowed time, formula time)");

    m.def(
        "eigenvalues",
        [](double s, double omega, std::size_t rank, std::size_t count) {
            OperatorConfig c;
            c.s = s;
            c.omega = omega;
            c.rank = rank;
            return top_eigenvalues(build(c), count);
        },
        py::arg("s") = 1.0, py::arg("omega") = 0.0, py::arg("rank") = 30, py::arg("count") = 5);
    m.def(
        "trace_residual", [](int n, double s, std::size_t rank) { return trace_formula_check(n, s, rank).residual(); },
        py::arg("n"), py::arg("s") = 1.5, py::arg("rank") = 30);

    m.def(
        "count_psi_even",
        [](double a, double b, std::int64_t N, unsigned threads) {
            return report_dict(count_psi_even(a, b, N, count_options(threads, 0, 0.0)));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("N"), py::arg("threads") = 1);
    m.def(
        "count_s_odd",
        [](double a, double b, std::int64_t N, unsigned threads, double region_floor) {
            return report_dict(count_s_odd(a, b, N, count_options(threads, 0, region_floor)));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("N"), py::arg("threads") = 1, py::arg("region_floor") = 0.0);
    m.def(
        "count_qf", [](double T, unsigned threads) { return report_dict(count_qf(T, count_options(threads, 0, 0.0))); },
        py::arg("T"), py::arg("threads") = 1);
    m.def(
        "count_qf_tilde",
        [](double x, double y, double T, unsigned threads, std::size_t max_points) {
            return report_dict(count_qf_tilde(x, y, T, count_options(threads, max_points, 0.0)));
        },
        py::arg("x"), py::arg("y"), py::arg("T"), py::arg("threads") = 1, py::arg("max_points") = 0);
}
