#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dcx/cli.hpp"
#include "dcx/corpus.hpp"
#include "dcx/io.hpp"
#include "dcx/sdc.hpp"

namespace py = pybind11;
using namespace dcx;

namespace {

struct PyRing {
  Algebra::Ptr a;
};

struct PyComplex {
  Complex x;
};

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DerivedOptions options(int window, std::size_t rank_budget) {
  DerivedOptions o;
  o.window = window;
  o.rank_budget = rank_budget;
  return o;
}

nlohmann::json verdict_json(const SdcVerdict& v) {
  return {{"holds", std::string(to_string(v.holds))}, {"certificate", to_json(v.certificate)}, {"witness", v.witness}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact derived-category computations over Artinian local algebras";

  py::register_exception<Error>(m, "Error");

  m.def("corpus_names", [] { return corpus_names(); });

  py::class_<PyRing>(m, "Ring")
      .def_static("load", [](const std::string& ref) { return PyRing{load_ring(ref)}; }, py::arg("ref"))
      .def_static("parse", [](const std::string& text) { return PyRing{parse_ring(text)}; }, py::arg("text"))
      .def_property_readonly("dim", [](const PyRing& r) { return r.a->dim(); })
      .def_property_readonly("embedding_dimension", [](const PyRing& r) { return r.a->local().embedding_dimension(); })
      .def("to_toml", [](const PyRing& r) { return ring_to_toml(*r.a); })
      .def("__repr__", [](const PyRing& r) { return "<Ring of dimension " + std::to_string(r.a->dim()) + ">"; });

  py::class_<PyComplex>(m, "Complex")
      .def_static("load", [](const PyRing& r, const std::string& ref) { return PyComplex{load_complex(r.a, ref)}; },
                  py::arg("ring"), py::arg("ref"))
      .def_static("parse", [](const PyRing& r, const std::string& text) { return PyComplex{parse_complex(r.a, text)}; },
                  py::arg("ring"), py::arg("text"))
      .def("shift", [](const PyComplex& c, int n) { return PyComplex{shift(c.x, n)}; }, py::arg("n"))
      .def("homology_dims", [](const PyComplex& c) { return homology_dims(c.x); })
      .def("to_toml", [](const PyComplex& c) { return complex_to_toml(c.x); });

  m.def(
      "invariants",
      [](const PyComplex& c, int window, std::size_t rank_budget) {
        const DerivedInvariants inv = invariants(c.x, options(window, rank_budget));
        return to_py({{"inf", inv.inf},     {"sup", inv.sup},   {"amp", inv.amp},
                      {"depth", inv.depth}, {"kdim", inv.kdim}, {"type", inv.type},
                      {"cohen_macaulay", inv.cm}, {"bass", to_json(inv.bass)}, {"betti", to_json(inv.betti)}});
      },
      py::arg("x"), py::arg("window") = -1, py::arg("rank_budget") = kDefaultRankBudget);
  m.def(
      "betti_numbers",
      [](const PyComplex& c, int lo, int hi, int window) { return to_py(to_json(betti_numbers(c.x, lo, hi, options(window, kDefaultRankBudget)))); },
      py::arg("x"), py::arg("lo"), py::arg("hi"), py::arg("window") = -1);
  m.def(
      "bass_numbers",
      [](const PyComplex& c, int lo, int hi, int window) { return to_py(to_json(bass_numbers(c.x, lo, hi, options(window, kDefaultRankBudget)))); },
      py::arg("x"), py::arg("lo"), py::arg("hi"), py::arg("window") = -1);
  m.def("is_semidualizing", [](const PyComplex& c) { return to_py(verdict_json(is_semidualizing(c.x))); }, py::arg("c"));
  m.def(
      "auslander_membership",
      [](const PyComplex& c, const PyComplex& x) { return to_py(verdict_json(auslander_membership(c.x, x.x))); },
      py::arg("c"), py::arg("x"));
  m.def(
      "gc_dimension",
      [](const PyComplex& c, const PyComplex& x) {
        const GcDimResult g = gc_dimension(c.x, x.x);
        nlohmann::json j = {{"value", g.to_string()}, {"certificate", to_json(g.certificate)}, {"witness", g.witness}};
        if (g.finite()) j["g"] = g.g;
        return to_py(j);
      },
      py::arg("c"), py::arg("x"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
