#include "statgeo/errors.hpp"
#include "statgeo/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace statgeo;

namespace {

std::string run(const std::string& text, std::optional<double> tol, std::optional<double> fd_step,
                std::optional<unsigned long long> seed, std::optional<int> samples, std::optional<int> threads,
                bool timing) {
  Scenario s = parse_scenario(text);
  apply_overrides(s, Overrides{tol, fd_step, seed, samples, threads});
  py::gil_scoped_release release;
  return report_json(s, run_scenario(s), timing);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = STATGEO_VERSION;

  // translators run newest first, so the base class goes first
  py::register_exception<Error>(m, "GeometryError", PyExc_RuntimeError);
  py::register_exception<ScenarioParseError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<FixtureConstructionError>(m, "FixtureError", PyExc_RuntimeError);

  m.def("run_json", &run, py::arg("scenario"), py::arg("tol") = py::none(), py::arg("fd_step") = py::none(),
        py::arg("seed") = py::none(), py::arg("samples") = py::none(), py::arg("threads") = py::none(),
        py::arg("timing") = true, "Run a scenario given as JSON text; returns the report as JSON text.");

  m.def("list_checks", [] {
    py::list out;
    for (const CheckInfo& c : check_registry()) {
      py::dict d;
      d["id"] = c.id;
      d["label"] = c.label;
      d["description"] = c.description;
      d["needs_submanifold"] = c.needs_submanifold;
      d["default_tolerance"] = c.default_tolerance;
      d["params"] = c.params;
      out.append(d);
    }
    return out;
  });

  m.def("list_builtins", [] {
    py::list out;
    for (const BuiltinInfo& b : builtin_registry()) {
      py::dict d;
      d["kind"] = b.kind;
      d["name"] = b.name;
      d["description"] = b.description;
      out.append(d);
    }
    return out;
  });
}
