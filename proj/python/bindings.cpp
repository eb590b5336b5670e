#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "hypercircle/pipeline.hpp"

namespace py = pybind11;
using namespace hypercircle;

namespace {

py::dict to_dict(const EstimateReport& r) {
  const ConstantsBundle& c = r.constants;
  py::dict d;
  d["h"] = r.h;
  d["grid_h"] = r.grid_h;
  d["eps"] = r.eps;
  d["kappa_h"] = c.kappa_h;
  d["C_h"] = c.c_of_h;
  d["C0"] = c.c0;
  d["C0h"] = c.c0h;
  d["Cp"] = c.cp;
  d["cp_provenance"] = c.cp_provenance;
  d["grad_sup"] = r.grad_sup;
  d["source_osc"] = r.source_osc;
  d["flux_gap"] = r.flux_gap;
  d["equilibration_residual"] = r.equilibration_residual;
  d["Err1"] = r.err1;
  d["Err2"] = r.err2;
  d["Err3"] = r.err3;
  d["E_L_bound"] = r.local_bound;
  d["E_G_bound"] = r.global_bound;
  d["E_L"] = r.exact_local ? py::cast(*r.exact_local) : py::none();
  d["E_G"] = r.exact_global ? py::cast(*r.exact_global) : py::none();
  return d;
}

py::list to_list(const std::vector<SweepRow>& rows) {
  py::list out;
  for (const auto& row : rows) {
    py::dict d = row.report ? to_dict(*row.report) : py::dict();
    d["n"] = row.n;
    d["eps"] = row.eps;
    d["error"] = row.error;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_hypercircle, m) {
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("n", &RunConfig::n)
      .def_readwrite("eps", &RunConfig::eps)
      .def_readwrite("n_list", &RunConfig::n_list)
      .def_readwrite("extended_n_list", &RunConfig::extended_n_list)
      .def_readwrite("band_n", &RunConfig::band_n)
      .def_readwrite("eps_list", &RunConfig::eps_list)
      .def_property_readonly("domain", [](const RunConfig& c) { return to_string(c.domain); })
      .def_property(
          "grad_norm_convention", [](const RunConfig& c) { return to_string(c.grad_norm); },
          [](RunConfig& c, const std::string& s) { c.grad_norm = parse_grad_norm_convention(s); })
      .def("validate", &RunConfig::validate);

  m.def("load_config", &load_config, py::arg("path"));
  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream is(text);
        return parse_config(is);
      },
      py::arg("text"), "Parse INI text.");

  m.def(
      "run_case",
      [](const RunConfig& cfg, int n, double eps) {
        EstimateReport r;
        {
          py::gil_scoped_release release;
          r = run_case(cfg, n, eps);
        }
        return to_dict(r);
      },
      py::arg("config"), py::arg("n"), py::arg("eps"));

  m.def(
      "sweep_mesh",
      [](const RunConfig& cfg, bool extended) {
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep_mesh(cfg, extended);
        }
        return to_list(rows);
      },
      py::arg("config"), py::arg("extended") = false);

  m.def(
      "sweep_bandwidth",
      [](const RunConfig& cfg) {
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep_bandwidth(cfg);
        }
        return to_list(rows);
      },
      py::arg("config"));

  m.def(
      "mesh_stats",
      [](const RunConfig& cfg, int n) {
        const MeshPtr mesh = make_mesh(cfg, n);
        py::dict d;
        d["vertices"] = mesh->num_vertices();
        d["edges"] = mesh->num_edges();
        d["triangles"] = mesh->num_triangles();
        d["h"] = mesh->h();
        return d;
      },
      py::arg("config"), py::arg("n"));
}
