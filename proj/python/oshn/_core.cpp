#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "oshn/cli.hpp"
#include "oshn/closed_form.hpp"
#include "oshn/model.hpp"
#include "oshn/oracle.hpp"
#include "oshn/presets.hpp"

namespace py = pybind11;
using namespace oshn;

namespace {

std::vector<Rational> parse_list(const std::vector<std::string>& raw, const char* what) {
  std::vector<Rational> out;
  for (const auto& s : raw) {
    auto r = parse_rational(s);
    if (!r) throw py::value_error(std::string(what) + ": malformed rational '" + s + "'");
    out.push_back(*r);
  }
  return out;
}

std::map<std::string, Rational> parse_params(const std::map<std::string, std::string>& raw) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : raw) {
    auto r = parse_rational(v);
    if (!r) throw py::value_error("param " + k + ": malformed rational '" + v + "'");
    out[k] = *r;
  }
  return out;
}

py::dict table_to_dict(const std::vector<std::pair<std::string, std::string>>& table) {
  py::dict d;
  for (const auto& [mono, val] : table) d[py::str(mono)] = val;
  return d;
}

struct PyModel {
  ModelSpec spec;
};

PyModel make_model(const std::vector<std::string>& psi, const std::vector<std::string>& y) {
  return {ModelSpec{parse_list(psi, "psi"), parse_list(y, "y")}};
}

PyModel make_preset(const std::string& name, int order,
                    const std::map<std::string, std::string>& params,
                    const std::string& y_preset_name, int q) {
  std::map<std::string, Rational> p = parse_params(params);
  if (q > 0) p["q"] = Rational(q);
  ModelSpec spec;
  spec.psi = psi_preset(name, order, p);
  spec.y = y_preset(y_preset_name, std::max(order, q), p);
  return {spec};
}

py::dict compute_npoint(const PyModel& model, int g, int n, int order, int threads) {
  NPointComputer comp(model.spec, TaskSpec{g, n, order});
  return table_to_dict(coefficient_table(comp.compute(threads), n));
}

py::dict oracle_npoint(const PyModel& model, int g, int n, int order) {
  NPointComputer comp(model.spec, TaskSpec{g, n, order});
  Oracle oracle(model.spec, order, std::max(0, 2 * g - 2 + n));
  return table_to_dict(coefficient_table(oracle.npoint(g, n, comp.cache(), order), n));
}

std::string hurwitz_number(const PyModel& model, int g, const std::vector<int>& mu) {
  int w = 0;
  for (int m : mu) w += m;
  Oracle oracle(model.spec, w, std::max(0, 2 * g - 2 + static_cast<int>(mu.size())));
  return rat_to_string(oracle.hurwitz(g, mu));
}

bool compare_routes(const PyModel& model, int g, int n, int order, int threads) {
  NPointComputer comp(model.spec, TaskSpec{g, n, order});
  LaurentSeries h = comp.compute(threads);
  Oracle oracle(model.spec, order, std::max(0, 2 * g - 2 + n));
  return h == oracle.npoint(g, n, comp.cache(), order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact n-point functions of weighted double Hurwitz numbers, two ways";

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("psi",
                             [](const PyModel& s) {
                               std::vector<std::string> out;
                               for (const auto& c : s.spec.psi) out.push_back(rat_to_string(c));
                               return out;
                             })
      .def_property_readonly("y", [](const PyModel& s) {
        std::vector<std::string> out;
        for (const auto& c : s.spec.y) out.push_back(rat_to_string(c));
        return out;
      });

  m.def("model", &make_model, py::arg("psi"), py::arg("y") = std::vector<std::string>{"1"},
        "Model from explicit rational coefficient lists (strings 'p/q').");
  m.def("preset", &make_preset, py::arg("name"), py::arg("order") = 12,
        py::arg("params") = std::map<std::string, std::string>{}, py::arg("y") = "simple",
        py::arg("q") = 0,
        "Named weight family: usual, monotone, strictly-monotone, hypermaps, bms.");
  m.def("compute", &compute_npoint, py::arg("model"), py::arg("g"), py::arg("n"),
        py::arg("order"), py::arg("threads") = 1,
        "H_{g,n} coefficients from the closed graph-sum formulas, monomial -> 'p/q'.");
  m.def("oracle", &oracle_npoint, py::arg("model"), py::arg("g"), py::arg("n"), py::arg("order"),
        "H_{g,n} coefficients from the Schur-expansion oracle.");
  m.def("hurwitz", &hurwitz_number, py::arg("model"), py::arg("g"), py::arg("mu"),
        "A single weighted double Hurwitz number h_{g,mu}, exact.");
  m.def("compare", &compare_routes, py::arg("model"), py::arg("g"), py::arg("n"),
        py::arg("order"), py::arg("threads") = 1,
        "True iff both routes agree coefficientwise (exact).");
}
