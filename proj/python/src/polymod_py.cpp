#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polymod/complex.hpp"
#include "polymod/error.hpp"
#include "polymod/fiber.hpp"
#include "polymod/moduli.hpp"

namespace py = pybind11;
using namespace polymod;

namespace {

std::vector<double> values(const WeightVector& theta) {
    return {theta.values().begin(), theta.values().end()};
}

WeightVector weight(const std::vector<double>& theta) { return validate_weight(theta); }

}  // namespace

PYBIND11_MODULE(_polymod, m) {
    m.doc() = "Moduli of planar polygons with prescribed exterior angles";

    // Raised as PolymodError(code, message).
    static PyObject* error_type = py::register_exception<Error>(m, "PolymodError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.message());
            PyErr_SetObject(error_type, args.ptr());
        }
    });

    m.def("validate_weight", [](const std::vector<double>& theta, double tol) { return values(validate_weight(theta, tol)); },
          py::arg("theta"), py::arg("tol_sum") = kDefaultTolSum);
    m.def("equal_weight", [](int n) { return values(equal_weight(n)); }, py::arg("n"));
    m.def("sample_weight", [](int n, std::uint64_t seed) { return values(sample_weight(n, seed)); }, py::arg("n"),
          py::arg("seed"));
    m.def("canonical_label", [](const std::vector<int>& word) { return canonical_label(word).word(); },
          py::arg("word"));
    m.def("enumerate_labels", [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& l : enumerate_labels(n)) out.push_back(l.word());
        return out;
    }, py::arg("n"));

    m.def("psi5", [](const std::vector<double>& theta, const std::string& label) {
        const auto s = psi5(weight(theta), Label::parse(label));
        return py::make_tuple(s.P, s.Q);
    }, py::arg("theta"), py::arg("label"));
    m.def("psi6", [](const std::vector<double>& theta, const std::string& label) {
        const auto s = psi6(weight(theta), Label::parse(label));
        return py::make_tuple(s.P, s.Q, s.R);
    }, py::arg("theta"), py::arg("label"));
    m.def("pentagon_side_lengths", [](double P, double Q) { return pentagon_side_lengths({P, Q}); }, py::arg("P"),
          py::arg("Q"));
    m.def("classify_hexahedron", [](double P, double Q, double R) {
        const auto c = classify_hexahedron({P, Q, R});
        py::list faces;
        for (const auto& f : c.faces) {
            faces.append(py::dict(py::arg("name") = f.name, py::arg("finite_vertices") = f.finite_vertices,
                                  py::arg("ideal_vertices") = f.ideal_vertices, py::arg("kind") = to_string(f.kind)));
        }
        return py::dict(py::arg("type") = c.type, py::arg("signs") = c.signs, py::arg("ideal") = c.ideal,
                        py::arg("faces") = faces);
    }, py::arg("P"), py::arg("Q"), py::arg("R"));

    m.def("fiber_point", [](const std::vector<double>& theta, const std::string& label) {
        return fiber_point(weight(theta), Label::parse(label));
    }, py::arg("theta"), py::arg("label"));
    m.def("fiber_theta5", [](std::pair<double, double> shape, std::complex<double> w, const std::string& label) {
        return values(fiber_theta5({shape.first, shape.second}, w, Label::parse(label)));
    }, py::arg("shape"), py::arg("w"), py::arg("label") = "12345");
    m.def("fiber_theta6", [](std::array<double, 3> shape, std::complex<double> w, const std::string& label) {
        return values(fiber_theta6({shape[0], shape[1], shape[2]}, w, Label::parse(label)));
    }, py::arg("shape"), py::arg("w"), py::arg("label") = "123456");

    auto inversion = [](const Inversion& inv) {
        return py::dict(py::arg("w") = inv.w, py::arg("theta") = values(inv.theta), py::arg("residual") = inv.residual);
    };
    m.def("invert5", [inversion](std::pair<double, double> s1, std::pair<double, double> s2, double tol) {
        return inversion(invert5({s1.first, s1.second}, {s2.first, s2.second}, tol));
    }, py::arg("shape1"), py::arg("shape2"), py::arg("tol") = kDefaultRoundTripTol);
    m.def("invert6", [inversion](std::array<double, 3> s1, std::array<double, 3> s2, double tol) {
        return inversion(invert6({s1[0], s1[1], s1[2]}, {s2[0], s2[1], s2[2]}, tol));
    }, py::arg("shape1"), py::arg("shape2"), py::arg("tol") = kDefaultRoundTripTol);

    m.def("verify_injectivity", [](int n, std::uint64_t samples, std::uint64_t seed, double tol, int jobs) {
        const auto r = verify_injectivity(n, samples, seed, tol, jobs);
        return py::dict(py::arg("n") = r.n, py::arg("samples") = r.samples, py::arg("max_error") = r.max_error,
                        py::arg("failures") = r.failures.size(), py::arg("ok") = r.ok());
    }, py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("tol") = kDefaultRoundTripTol, py::arg("jobs") = 1);

    m.def("complex_summary", [](const std::vector<double>& theta) {
        const auto cx = build_complex(weight(theta));
        py::dict d(py::arg("n") = cx.n(), py::arg("cells") = cx.cells().size(),
                   py::arg("pairings") = cx.pairings().size(), py::arg("corner_classes") = cx.corner_classes().size());
        if (cx.n() == 5) {
            d["chi"] = euler_characteristic(cx);
        } else {
            d["vertex_classes"] = cx.vertex_classes().size();
            d["singular_edges"] = singular_edges(cx).size();
        }
        return d;
    }, py::arg("theta"));
    m.def("cusp_count", [](const std::vector<double>& theta) {
        return cusp_classes(build_complex(weight(theta))).classes.size();
    }, py::arg("theta"));
    m.def("export_adjacency", [](const std::vector<double>& theta, const std::string& format) {
        return export_adjacency(build_complex(weight(theta)), format);
    }, py::arg("theta"), py::arg("format") = "json");
}
