#include "hfkb/cover.hpp"
#include "hfkb/identities.hpp"
#include "hfkb/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;

namespace {

hfkb::LiftMode lift_mode(std::optional<bool> lift) {
  if (!lift) return hfkb::LiftMode::automatic;
  return *lift ? hfkb::LiftMode::on : hfkb::LiftMode::off;
}

std::string compute_json(const hfkb::Input& in, std::optional<bool> lift, int max_domain_coeff, bool timing) {
  hfkb::ComputeOptions o;
  o.lift = lift_mode(lift);
  o.max_domain_coeff = max_domain_coeff;
  o.timing = timing;
  return hfkb::compute_report(in, o).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Knot Floer homology of two-bridge and grid diagrams and their branched double covers.";

  py::register_exception<hfkb::ValidationFailed>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<hfkb::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "two_bridge_report",
      [](int p, int q, std::optional<bool> lift, int max_domain_coeff, bool timing) {
        return compute_json(hfkb::two_bridge_input(p, q), lift, max_domain_coeff, timing);
      },
      py::arg("p"), py::arg("q"), py::arg("lift") = py::none(), py::arg("max_domain_coeff") = 0,
      py::arg("timing") = false, "JSON report for the two-bridge knot b(p, q).");
  m.def(
      "grid_report",
      [](const std::string& path, std::optional<bool> lift, int max_domain_coeff, bool timing) {
        return compute_json(hfkb::grid_input(path), lift, max_domain_coeff, timing);
      },
      py::arg("path"), py::arg("lift") = py::none(), py::arg("max_domain_coeff") = 0, py::arg("timing") = false);
  m.def(
      "diagram_report",
      [](const std::string& path, std::optional<bool> lift, int max_domain_coeff, bool timing) {
        return compute_json(hfkb::diagram_input(path), lift, max_domain_coeff, timing);
      },
      py::arg("path"), py::arg("lift") = py::none(), py::arg("max_domain_coeff") = 0, py::arg("timing") = false);
  m.def(
      "checks_report",
      [](int max_n, std::optional<std::string> fixture) {
        hfkb::ChecksOptions o;
        o.max_n = max_n;
        o.fixture = std::move(fixture);
        return hfkb::run_checks(o).dump();
      },
      py::arg("max_n") = 5, py::arg("fixture") = py::none());

  m.def("two_bridge_diagram", [](int p, int q) { return hfkb::serialize_diagram(hfkb::two_bridge({p, q})); },
        "Diagram text for b(p, q).");
  m.def("lifted_diagram", [](int p, int q) { return hfkb::serialize_cover(hfkb::lift_diagram(hfkb::two_bridge({p, q}))); },
        "Diagram text of the branched double cover, with a [tau] section.");
  m.def("validate_diagram", [](const std::string& text) {
    const auto r = hfkb::validate(hfkb::parse_diagram(text));
    py::dict out;
    out["ok"] = r.ok;
    out["genus"] = r.genus;
    out["basepoint_pairs"] = r.basepoint_pairs;
    py::list issues;
    for (const auto& i : r.issues) issues.append(py::make_tuple(i.code, i.message));
    out["issues"] = issues;
    return out;
  });

  m.def("sigma_doubling", [](int k) {
    std::vector<std::string> out;
    for (const auto& p : hfkb::sigma_doubling(k)) out.push_back(p.to_string());
    return out;
  });
  m.def("sym_wedge_betti", &hfkb::sym_wedge_betti, py::arg("m"), py::arg("r"));
  m.def("check_i1_surjectivity", &hfkb::check_i1_surjectivity, py::arg("n"));
}
