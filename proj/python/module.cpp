#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "besselorbit/criteria.hpp"
#include "besselorbit/densexpr.hpp"
#include "besselorbit/gram.hpp"
#include "besselorbit/heat.hpp"
#include "besselorbit/measure.hpp"
#include "besselorbit/report.hpp"
#include "besselorbit/spec_json.hpp"

namespace py = pybind11;

namespace {

besselorbit::SpectralMeasureSpec load(const std::string& json) {
  auto spec = besselorbit::parse_spec_json(json);
  besselorbit::validate(spec);
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Bessel-property analysis of normal-operator orbits from a spectral "
      "measure description";

  py::register_exception<besselorbit::ParseError>(m, "ExprParseError");
  py::register_exception<besselorbit::SpecParseError>(m, "SpecParseError");
  py::register_exception<besselorbit::MeasureError>(m, "MeasureError");

  m.def("validate_spec",
        [](const std::string& json) { return besselorbit::spec_to_json(load(json)); },
        py::arg("spec_json"),
        "Parse and validate a measure spec; returns the normalized JSON.");

  m.def("total_mass",
        [](const std::string& json) { return besselorbit::total_mass(load(json)); },
        py::arg("spec_json"));

  m.def("moment",
        [](const std::string& json, unsigned k, unsigned j) {
          return besselorbit::moment(load(json), k, j);
        },
        py::arg("spec_json"), py::arg("k"), py::arg("j"),
        "Mixed moment <A^k x, A^j x> of the orbit.");

  m.def("tail_mass",
        [](const std::string& json, double eps) {
          return besselorbit::tail_mass(load(json), eps);
        },
        py::arg("spec_json"), py::arg("eps"));

  m.def("support_radius",
        [](const std::string& json) {
          return besselorbit::support_radius(load(json));
        },
        py::arg("spec_json"));

  m.def("gram_norm",
        [](const std::string& json, std::size_t n) {
          return besselorbit::operator_norm(
              besselorbit::build_section(load(json), n));
        },
        py::arg("spec_json"), py::arg("n"),
        "Operator norm of the n x n Gram section of the orbit.");

  m.def("gram_profile",
        [](const std::string& json, const std::vector<std::size_t>& sizes) {
          return besselorbit::bessel_bound_profile(load(json), sizes);
        },
        py::arg("spec_json"), py::arg("sizes"));

  m.def("analyze",
        [](const std::string& json) {
          return besselorbit::verdict_to_json(besselorbit::verdict(load(json)));
        },
        py::arg("spec_json"),
        "Run all criteria and return the verdict report as JSON.");

  m.def("heat_measure_spec",
        [](double delta) {
          return besselorbit::spec_to_json(besselorbit::heat_measure({delta}));
        },
        py::arg("delta"),
        "Measure spec JSON for the heat-semigroup orbit example.");

  m.def("heat_tail", &besselorbit::heat_tail, py::arg("delta"), py::arg("eps"));
  m.def("heat_moment", &besselorbit::heat_moment, py::arg("delta"),
        py::arg("k"));

  m.def("eval_density",
        [](const std::string& source, const std::vector<std::string>& vars,
           const std::vector<double>& values) {
          const auto expr = besselorbit::DensityExpr::parse(source, vars);
          return expr.eval(values);
        },
        py::arg("source"), py::arg("variables"), py::arg("values"),
        "Evaluate a density expression at one point.");
}
