#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pleat/cli.hpp"
#include "pleat/error.hpp"
#include "pleat/fngroup.hpp"
#include "pleat/fuchsian.hpp"
#include "pleat/rays.hpp"
#include "pleat/render.hpp"
#include "pleat/slices.hpp"
#include "pleat/traces.hpp"

namespace py = pybind11;
using namespace pleat;

namespace {

Slope slope(const std::string& text) { return Slope::parse(text); }

Branch branch(const std::string& name) {
    if (name == "upper") return Branch::Upper;
    if (name == "lower") return Branch::Lower;
    throw Error(ErrorKind::Precondition, "branch must be 'upper' or 'lower'");
}

py::tuple triple_tuple(const TraceTriple& t) { return py::make_tuple(t.x, t.y, t.z); }

TraceTriple triple_of(const std::tuple<cplx, cplx, cplx>& t) {
    return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

}  // namespace

PYBIND11_MODULE(_pleat, m) {
    m.doc() = "Pleating rays and BM-slices of quasifuchsian punctured-torus groups";

    static py::exception<Error> error_type(m, "PleatError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    m.def("normalize_slope", [](const std::string& s) { return slope(s).str(); });
    m.def("intersection_number", [](const std::string& a, const std::string& b) {
        return intersection_number(slope(a), slope(b));
    });
    m.def("stern_brocot", [](int depth) {
        std::vector<std::string> out;
        for (const Slope& s : stern_brocot_enumerate(depth)) out.push_back(s.str());
        return out;
    });

    m.def("triple_from_fn", [](cplx lambda_v, cplx tau) { return triple_tuple(triple_from_fn({lambda_v, tau})); },
          py::arg("lambda_v"), py::arg("tau"));
    m.def("markov_residual", [](const std::tuple<cplx, cplx, cplx>& t) { return markov_residual(triple_of(t)); });
    m.def("trace_of_slope", [](const std::tuple<cplx, cplx, cplx>& t, const std::string& s) {
        return trace_of_slope(triple_of(t), slope(s));
    });
    m.def("quakebend_trace", [](const std::string& mu, double c, const std::string& nu, cplx tau) {
        return QuakebendTrace(slope(mu), c, slope(nu)).value(tau);
    }, py::arg("mu"), py::arg("c"), py::arg("nu"), py::arg("tau"));

    m.def("f_value", [](const std::string& mu, const std::string& nu, double c) {
        return f_value(slope(mu), slope(nu), c);
    });
    m.def("critical_point", [](const std::string& mu, const std::string& nu, double c) {
        const CriticalPoint cp = critical_point(slope(mu), slope(nu), c);
        py::dict d;
        d["c"] = cp.c;
        d["t_star"] = cp.t_star;
        d["f_value"] = cp.f_value;
        d["trace_mu"] = cp.trace_mu;
        d["trace_nu"] = cp.trace_nu;
        return d;
    });

    // Compound results travel as the same JSON documents the CLI writes.
    m.def("_trace_ray", [](const std::string& mu, const std::string& nu, double c, int samples, double tol,
                           const std::string& br) {
        return to_json(trace_ray(slope(mu), slope(nu), c, {samples, tol, branch(br)})).dump();
    });
    m.def("_cusp_point", [](const std::string& mu, const std::string& nu, double c, double tol, const std::string& br) {
        return to_json(cusp_point(slope(mu), slope(nu), c, tol, branch(br))).dump();
    });
    m.def("_locate_group", [](const std::string& mu, const std::string& nu, double c, double d) {
        return to_json(locate_group(slope(mu), slope(nu), c, d)).dump();
    });
    m.def("_bm_slice", [](const std::string& mu, double c, int depth, int samples, double tol, unsigned workers) {
        SliceOptions opt;
        opt.samples = samples;
        opt.tol = tol;
        opt.workers = workers;
        py::gil_scoped_release release;
        return to_json(bm_slice(slope(mu), c, depth, opt)).dump();
    });
    m.def("_boundary_catalog", [](const std::string& mu, double c, int depth, unsigned workers) {
        SliceOptions opt;
        opt.workers = workers;
        py::gil_scoped_release release;
        return to_json(qf_boundary_catalog(slope(mu), c, depth, opt)).dump();
    });

    m.def("fuchsian_limit_set", [](cplx lambda_v, cplx tau, int max_word_len) {
        return limit_set_points(matrices_from_triple(triple_from_fn({lambda_v, tau})), max_word_len);
    }, py::arg("lambda_v"), py::arg("tau"), py::arg("max_word_len") = 6);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Run the pleat command line in-process; returns (exit_code, stdout, stderr).");
}
