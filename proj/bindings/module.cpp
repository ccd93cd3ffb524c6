#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "confining/cli.hpp"
#include "confining/domains.hpp"
#include "confining/hardy.hpp"
#include "confining/iterlog.hpp"
#include "confining/potentials.hpp"
#include "confining/sturm.hpp"

namespace py = pybind11;
using namespace confining;

namespace {

py::tuple run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

TestFunction named_test_function(const std::string& name, double param) {
    if (name == "sine") return TestFunction::sine();
    if (name == "parabola") return TestFunction::parabola();
    if (name == "power") return TestFunction::power_boundary(param);
    throw std::invalid_argument("unknown test function: " + name +
                                " (sine|parabola|power)");
}

Domain named_domain(const std::string& shape, double a, double b) {
    if (shape == "interval") return Domain::interval();
    if (shape == "disk") return Domain::disk(a);
    if (shape == "annulus") return Domain::annulus(a, b);
    if (shape == "ellipse") return Domain::ellipse(a, b);
    throw std::invalid_argument("unknown shape: " + shape);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerics for confining boundary potentials";

    m.def("cli", &run, py::arg("args"),
          "run a CLI invocation in-process; returns (exit_code, stdout, stderr)");

    m.def(
        "iterlog", [](int k, double s) { return iterlog(k, LogCoordinate(s)); }, py::arg("k"),
        py::arg("s"), "iterated logarithm L_k at depth s = ln(1/t)");
    m.def("xk_from_s", &xk_from_s, py::arg("k"), py::arg("s"),
          "iterated resolvent X_k of the boundary distance, from s = ln(1/t)");
    m.def("iterlog_threshold", &iterlog_threshold, py::arg("k"),
          "smallest depth s at which level k is admissible");

    m.def(
        "critical_coeff",
        [](int p, double s) { return critical_coeff(p, LogCoordinate(s)); }, py::arg("p"),
        py::arg("s"), "coefficient of the critical confining potential at depth s");
    m.def(
        "counterexample_potential",
        [](int p, double alpha, double s) {
            return counterexample_potential(p, alpha, LogCoordinate(s));
        },
        py::arg("p"), py::arg("alpha"), py::arg("s"),
        "dimensionless coefficient of the borderline family at depth s");

    m.def(
        "classify_power",
        [](double c) {
            EndpointClassification r = classify_endpoint(PotentialFamily::power_critical(c));
            py::dict d;
            d["verdict"] = to_string(r.type);
            d["agree"] = r.agree;
            d["sigma_dominant"] = r.per_energy.front().dominant_tail.sigma;
            d["sigma_recessive"] = r.per_energy.front().recessive_tail.sigma;
            return d;
        },
        py::arg("c"), "limit point / limit circle verdict for the power family");

    m.def(
        "hardy_quotient",
        [](const std::string& family, double param) {
            return hardy_quotient(named_test_function(family, param), 0.0).quotient;
        },
        py::arg("family"), py::arg("param") = 0.0,
        "boundary Hardy quotient of a named test function");

    m.def(
        "reach", [](const std::string& shape, double a,
                    double b) { return named_domain(shape, a, b).reach(); },
        py::arg("shape"), py::arg("a") = 0.0, py::arg("b") = 0.0,
        "reach of a named planar domain");
    m.def(
        "dist",
        [](const std::string& shape, double a, double b, double x, double y) {
            DistGrad r = named_domain(shape, a, b).dist_and_grad(x, y);
            return py::make_tuple(r.d, r.gx, r.gy);
        },
        py::arg("shape"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"),
        "boundary distance and its gradient at an interior point");
}
