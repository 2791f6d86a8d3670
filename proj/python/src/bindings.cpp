#include "semihilbert/bounds.hpp"
#include "semihilbert/error.hpp"
#include "semihilbert/exact.hpp"
#include "semihilbert/io.hpp"
#include "semihilbert/metric.hpp"
#include "semihilbert/radii.hpp"
#include "semihilbert/semiop.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace semihilbert;

namespace {

Objective parse_objective(const std::string& s) {
    if (s == "dw") return Objective::dw;
    if (s == "crawford") return Objective::crawford;
    if (s == "numrad") return Objective::numrad;
    throw py::value_error("objective must be 'dw', 'crawford' or 'numrad'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "A-Davis-Wielandt radius and related quantities under a positive semidefinite metric";

    // released handle: lives as long as the module, never decref'd at exit
    static const py::handle error = py::exception<Error>(m, "SemiHilbertError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<Metric>(m, "Metric")
        .def(py::init([](const CMatrix& a, double rank_tol) { return Metric::build(a, rank_tol); }), py::arg("a"),
             py::arg("rank_tol") = kDefaultRankTol)
        .def_property_readonly("dim", &Metric::dim)
        .def_property_readonly("rank", &Metric::rank)
        .def_property_readonly("a", &Metric::a)
        .def_property_readonly("sqrt_a", &Metric::sqrt_a)
        .def_property_readonly("pinv_a", &Metric::pinv_a)
        .def_property_readonly("pinv_sqrt_a", &Metric::pinv_sqrt_a)
        .def_property_readonly("proj", &Metric::proj)
        .def_property_readonly("basis", &Metric::basis);

    py::class_<RadiusEstimate>(m, "RadiusEstimate")
        .def_readonly("value", &RadiusEstimate::value)
        .def_readonly("maximizer", &RadiusEstimate::maximizer)
        .def_readonly("witness", &RadiusEstimate::witness)
        .def_property_readonly("method", [](const RadiusEstimate& e) { return std::string(to_string(e.method)); })
        .def_readonly("iterations", &RadiusEstimate::iterations)
        .def_readonly("residual", &RadiusEstimate::residual)
        .def_readonly("warning", &RadiusEstimate::warning)
        .def("__float__", [](const RadiusEstimate& e) { return e.value; })
        .def("__repr__", [](const RadiusEstimate& e) {
            return "RadiusEstimate(value=" + format_full(e.value) + ", method=" + std::string(to_string(e.method)) + ")";
        });

    m.def("semi_inner", &semi_inner, py::arg("metric"), py::arg("x"), py::arg("y"));
    m.def("semi_norm", &semi_norm, py::arg("metric"), py::arg("x"));

    m.def("sharp", &sharp, py::arg("metric"), py::arg("t"));
    m.def("re_a", &re_a, py::arg("metric"), py::arg("t"));
    m.def("im_a", &im_a, py::arg("metric"), py::arg("t"));
    m.def("abs_sq", &abs_sq, py::arg("metric"), py::arg("t"));
    m.def("in_ba", &in_ba, py::arg("metric"), py::arg("t"), py::arg("tol") = kMembershipTol);
    m.def("is_a_bounded", &is_a_bounded, py::arg("metric"), py::arg("t"), py::arg("tol") = kMembershipTol);
    m.def("is_a_selfadjoint", &is_a_selfadjoint, py::arg("metric"), py::arg("t"), py::arg("tol") = kMembershipTol);
    m.def("is_a_unitary", &is_a_unitary, py::arg("metric"), py::arg("t"), py::arg("tol") = kMembershipTol);

    m.def("op_seminorm", &op_seminorm, py::arg("metric"), py::arg("t"));
    m.def("min_modulus", py::overload_cast<const Metric&, const CMatrix&>(&min_modulus), py::arg("metric"),
          py::arg("t"));
    m.def("numerical_radius", py::overload_cast<const Metric&, const CMatrix&, int>(&numerical_radius),
          py::arg("metric"), py::arg("t"), py::arg("grid") = kNumradGrid);
    m.def("crawford", [](const Metric& mt, const CMatrix& t) { return crawford(mt, t); }, py::arg("metric"),
          py::arg("t"));
    m.def("dw_radius", [](const Metric& mt, const CMatrix& t) { return dw_radius(mt, t); }, py::arg("metric"),
          py::arg("t"));
    m.def(
        "oracle_extremum",
        [](const Metric& mt, const CMatrix& t, const std::string& objective, int samples, std::uint64_t seed) {
            return oracle_extremum(mt, t, parse_objective(objective), samples, seed);
        },
        py::arg("metric"), py::arg("t"), py::arg("objective") = "dw", py::arg("samples") = 200000,
        py::arg("seed") = 42);

    m.def("dw_exact_ix", &dw_exact_ix, py::arg("metric"), py::arg("x"));
    m.def("dw_exact_0x", &dw_exact_0x, py::arg("metric"), py::arg("x"));
    m.def("phi", &phi, py::arg("theta"), py::arg("b"));
    m.def("cardano_theta0_json", [](double b) { return cardano_to_json(cardano_theta0(b)).dump(); }, py::arg("b"));

    m.def(
        "verify_all_json",
        [](const Metric& mt, const CMatrix& t, std::uint64_t seed, int samples) {
            VerifyOptions opts;
            opts.oracle_samples = samples;
            return report_to_json(verify_all(mt, t, seed, opts)).dump();
        },
        py::arg("metric"), py::arg("t"), py::arg("seed") = 42, py::arg("samples") = 200000);
    m.def(
        "verify_pair_json",
        [](const Metric& mt, const CMatrix& x, const CMatrix& y, std::uint64_t seed, int samples) {
            VerifyOptions opts;
            opts.oracle_samples = samples;
            return report_to_json(verify_pair(mt, x, y, seed, opts)).dump();
        },
        py::arg("metric"), py::arg("x"), py::arg("y"), py::arg("seed") = 42, py::arg("samples") = 200000);
}
