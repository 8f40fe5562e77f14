#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qnull/exactlinalg.hpp"
#include "qnull/incidence.hpp"
#include "qnull/nulldesign.hpp"

namespace py = pybind11;
using namespace qnull;

namespace {

SearchMode parse_mode(const std::string& name) {
    if (name == "kernel") return SearchMode::kernel_enumeration;
    if (name == "support") return SearchMode::support_enumeration;
    if (name == "branch") return SearchMode::branch_and_bound;
    throw py::value_error("mode must be 'kernel', 'support' or 'branch'");
}

py::dict report_dict(const SearchReport& rep) {
    py::dict d;
    d["weight"] = rep.weight ? py::cast(*rep.weight) : py::none();
    d["support"] = rep.support;
    d["values"] = rep.values;
    d["mode"] = to_string(rep.mode);
    d["exhaustive"] = rep.exhaustive;
    d["cap"] = rep.cap;
    return d;
}

py::list support_list(const NullDesign& c) {
    py::list out;
    for (const auto& [x, v] : c.support()) out.append(py::make_tuple(x.k(), x.to_string(), v));
    return out;
}

NullDesign design_from_entries(unsigned q, unsigned n, unsigned r, unsigned t_claimed,
                               const std::vector<std::pair<std::string, std::uint64_t>>& entries) {
    const auto& f = FieldSpec::get(q);
    NullDesign d(f, n, r, t_claimed);
    for (const auto& [text, coeff] : entries) d.set(parse_subspace(f, n, text), coeff);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact subspace null designs over finite fields";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);

    m.def("gaussian_binomial", &gaussian_binomial, py::arg("n"), py::arg("k"), py::arg("q"));
    m.def(
        "enumerate_subspaces",
        [](unsigned q, unsigned n, unsigned k) {
            std::vector<std::string> out;
            for (const auto& x : enumerate(FieldSpec::get(q), n, k)) out.push_back(x.to_string());
            return out;
        },
        py::arg("q"), py::arg("n"), py::arg("k"));
    m.def(
        "canonicalize",
        [](unsigned q, unsigned n, const std::vector<Vec>& rows) { return canonicalize(FieldSpec::get(q), n, rows).to_string(); },
        py::arg("q"), py::arg("n"), py::arg("rows"));

    py::class_<IncidenceMatrix>(m, "IncidenceMatrix")
        .def_property_readonly("q", &IncidenceMatrix::q)
        .def_property_readonly("n", &IncidenceMatrix::n)
        .def_property_readonly("t", &IncidenceMatrix::t)
        .def_property_readonly("k", &IncidenceMatrix::k)
        .def_property_readonly("shape", [](const IncidenceMatrix& w) { return py::make_tuple(w.rows(), w.cols()); })
        .def("entry", &IncidenceMatrix::entry)
        .def("nonzero_count", &IncidenceMatrix::nonzero_count)
        .def("to_coordinate", [](const IncidenceMatrix& w) {
            std::ostringstream out;
            write_coordinate(out, w);
            return out.str();
        })
        .def_static("from_coordinate", [](const std::string& text) {
            std::istringstream in(text);
            return read_coordinate(in);
        })
        .def("apply_check", [](const IncidenceMatrix& w, const std::vector<std::uint32_t>& c, unsigned r) {
            return apply_check(w, c, r);
        }, py::arg("c"), py::arg("r"))
        .def("rank_gf", [](const IncidenceMatrix& w, unsigned p) { return rref_gfp(GfpMatrix::from_incidence(w, p)).rank; },
             py::arg("p"))
        .def("rank_rational", [](const IncidenceMatrix& w) { return rank_rational(IntMatrix::from_incidence(w)); })
        .def("min_weight",
             [](const IncidenceMatrix& w, unsigned p, std::size_t cap, const std::string& mode, unsigned threads) {
                 const auto g = GfpMatrix::from_incidence(w, p);
                 SearchReport rep;
                 {
                     py::gil_scoped_release release;
                     rep = min_weight_kernel_gfp(g, cap, parse_mode(mode), {0, threads});
                 }
                 return report_dict(rep);
             },
             py::arg("p"), py::arg("cap"), py::arg("mode") = "branch", py::arg("threads") = 1)
        .def("min_support",
             [](const IncidenceMatrix& w, std::size_t cap, unsigned threads) {
                 const auto a = IntMatrix::from_incidence(w);
                 SearchReport rep;
                 {
                     py::gil_scoped_release release;
                     rep = min_support_kernel_rational(a, cap, {0, threads});
                 }
                 return report_dict(rep);
             },
             py::arg("cap"), py::arg("threads") = 1);

    m.def("wilson_matrix", &wilson_matrix, py::arg("q"), py::arg("n"), py::arg("t"), py::arg("k"));

    py::class_<NullDesign>(m, "NullDesign")
        .def(py::init(&design_from_entries), py::arg("q"), py::arg("n"), py::arg("r"), py::arg("t_claimed"),
             py::arg("entries"))
        .def_property_readonly("q", [](const NullDesign& c) { return c.field().q(); })
        .def_property_readonly("n", &NullDesign::n)
        .def_property_readonly("r", &NullDesign::r)
        .def_property_readonly("t_claimed", &NullDesign::t_claimed)
        .def_property_readonly("support", &support_list)
        .def("__len__", &NullDesign::size)
        .def("uniform", &NullDesign::uniform, py::arg("k"))
        .def("reduced", &NullDesign::reduced, py::arg("r"))
        .def("to_text", [](const NullDesign& c) {
            std::ostringstream out;
            write_design(out, c);
            return out.str();
        })
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return read_design(in);
        });

    m.def("construct_lb_design", &construct_lb_design, py::arg("q"), py::arg("n"), py::arg("t"),
          py::arg("r") = std::nullopt);
    m.def(
        "construct_uniform_design",
        [](unsigned q, unsigned n, unsigned k, unsigned t, std::optional<unsigned> r) {
            return construct_uniform_design(q, n, k, t, std::nullopt, r);
        },
        py::arg("q"), py::arg("n"), py::arg("k"), py::arg("t"), py::arg("r") = std::nullopt);
    m.def(
        "verify_strength",
        [](const NullDesign& c, unsigned t) {
            const auto v = verify_strength(c, t);
            py::list violations;
            for (const auto& viol : v.violations) violations.append(py::make_tuple(viol.y.to_string(), viol.value));
            return py::make_tuple(v.ok, violations);
        },
        py::arg("design"), py::arg("t"));
    m.def("strength_of", &strength_of, py::arg("design"), py::arg("t_max"));
    m.def("check_constant_sum", &check_constant_sum, py::arg("design"), py::arg("t"));
}
