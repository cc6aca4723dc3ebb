#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graded/fracops.hpp"
#include "graded/group.hpp"
#include "graded/heat.hpp"
#include "graded/specfun.hpp"
#include "graded/squarefn.hpp"
#include "graded/strichartz.hpp"
#include "graded/suite.hpp"

namespace py = pybind11;
using namespace graded;

namespace {

GroupPtr group_ptr(const std::string& name) { return std::make_shared<const GroupSpec>(builtin_group(name)); }

HeatModel model(const std::string& group) {
  const GroupPtr g = group_ptr(group);
  HeatModel m = g->abelian ? HeatModel::euclidean(g->n) : HeatModel::h1();
  return m;
}

SampledField line_field(py::array_t<double, py::array::c_style | py::array::forcecast> v, double lo, double hi) {
  if (v.ndim() != 1) throw DimensionMismatch("expected a 1-d array");
  SampledField f = SampledField::zeros(group_ptr("R1"), Grid::uniform(1, lo, hi, static_cast<std::size_t>(v.shape(0))));
  std::copy(v.data(), v.data() + v.shape(0), f.values.begin());
  return f;
}

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

}  // namespace

PYBIND11_MODULE(_graded, m) {
  m.doc() = "Heat kernels, fractional powers and square functions on graded groups";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<SupportOverflow>(m, "SupportOverflow", PyExc_RuntimeError);

  m.def("multiply", [](const std::string& g, const std::vector<double>& x, const std::vector<double>& y) {
    const GroupSpec s = builtin_group(g);
    return multiply(s, Point(x), Point(y)).to_vector();
  });
  m.def("inverse", [](const std::string& g, const std::vector<double>& x) {
    return inverse(builtin_group(g), Point(x)).to_vector();
  });
  m.def(
      "quasi_norm",
      [](const std::string& g, const std::vector<double>& x, const std::string& variant) {
        return quasi_norm(builtin_group(g), Point(x), parse_norm_variant(variant));
      },
      py::arg("group"), py::arg("x"), py::arg("variant") = "max");

  m.def("heat_kernel", [](const std::string& g, double t, const std::vector<double>& x) {
    return heat_kernel(model(g), t, Point(x));
  });
  m.def("kummer_reg", &kummer_reg);
  m.def("gamma", &gamma_fn);
  m.def("phi_alpha", &phi_alpha_euclidean, py::arg("n"), py::arg("alpha"), py::arg("r"));
  m.def(
      "psi",
      [](double alpha, double beta, double nu, double c, double r) {
        PsiParams p{alpha, beta, nu, c};
        p.validate();
        return psi(p, r);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("nu"), py::arg("c"), py::arg("r"));

  m.def(
      "frac_power",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> v, double lo, double hi, double alpha,
         const std::string& route) {
        const SampledField f = line_field(v, lo, hi);
        const QuadratureConfig cfg;
        SampledField r;
        if (route == "spectral") r = frac_power_spectral(f, alpha, cfg.pad_factor);
        else if (route == "pointwise") r = frac_power_pointwise_grid(f, alpha, cfg);
        else if (route == "balakrishnan") r = frac_power_balakrishnan(HeatModel::euclidean(1), f, alpha, cfg);
        else throw ParseError("unknown route '" + route + "'");
        return to_array(r.values);
      },
      py::arg("values"), py::arg("lo"), py::arg("hi"), py::arg("alpha"), py::arg("route") = "spectral");
  m.def(
      "g_alpha_norm",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> v, double lo, double hi, double alpha) {
        QuadratureConfig cfg;
        cfg.pad_factor = 16;
        return g_alpha(HeatModel::euclidean(1), line_field(v, lo, hi), alpha, cfg).lp;
      },
      py::arg("values"), py::arg("lo"), py::arg("hi"), py::arg("alpha"));
  m.def(
      "counterexample_slope",
      [](const std::string& route, double s, const std::vector<double>& eps) {
        return counterexample_exponent(parse_route(route), s, eps).slope;
      },
      py::arg("route"), py::arg("s"), py::arg("eps"));

  m.def("checks", [] {
    std::vector<std::pair<std::string, int>> out;
    for (const SuiteCheck& c : suite_checks()) out.emplace_back(c.name, c.criterion);
    return out;
  });
  m.def("run_check", [](const std::string& name) {
    py::list out;
    for (const CheckOutcome& o : run_checks({name}, SuiteSettings{}))
      for (const VerificationReport& r : o.reports) {
        py::dict d;
        d["report"] = r.check_name;
        d["pass"] = r.pass;
        d["empirical_constant"] = r.empirical_constant;
        d["stability"] = r.stability;
        d["ratios"] = r.ratios;
        d["notes"] = r.notes;
        out.append(d);
      }
    return out;
  });
}
