#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gkl/bounds.hpp"
#include "gkl/config.hpp"
#include "gkl/fields.hpp"
#include "gkl/kernel.hpp"
#include "gkl/lipschitz.hpp"
#include "gkl/parallel.hpp"
#include "gkl/report.hpp"
#include "gkl/verify.hpp"

namespace py = pybind11;
using namespace gkl;

namespace {

KernelQuery query(double t, const std::vector<double>& x, const std::vector<double>& y) {
  return KernelQuery(t, EuclideanPoint(x), EuclideanPoint(y));
}

QuadratureSpec spec_with(double rel_tol) {
  QuadratureSpec s;
  s.rel_tol = rel_tol;
  s.validate();
  return s;
}

py::dict bound_dict(const BoundEvaluation& b) {
  py::dict terms;
  for (const auto& [id, v] : b.terms) terms[py::str(id)] = v;
  py::dict out;
  out["terms"] = terms;
  out["total"] = b.total;
  out["active"] = b.active_indicators;
  return out;
}

py::dict report_dict(const SweepReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["inequality_id"] = r.inequality_id;
  d["sample_count"] = r.sample_count;
  d["empirical_constant"] = r.empirical_constant;
  d["lower_constant"] = r.lower_constant;
  d["bound"] = r.bound;
  d["refinement_ratio"] = r.refinement_ratio;
  d["pass"] = r.pass;
  d["worst_t"] = r.worst_t;
  d["worst_x"] = r.worst_x;
  d["worst_y"] = r.worst_y;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ornstein-Uhlenbeck Poisson kernel, its bound kernels and the verification suites";

  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<PipelineDisagreement>(m, "PipelineDisagreement", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<LogValue>(m, "LogValue")
      .def_property_readonly("log_magnitude", &LogValue::log_magnitude)
      .def_property_readonly("sign", &LogValue::sign)
      .def_property_readonly("value", &LogValue::value)
      .def("__float__", &LogValue::value)
      .def("__repr__", [](const LogValue& v) {
        return "LogValue(sign=" + std::to_string(v.sign()) + ", log_magnitude=" + format_number(v.log_magnitude()) +
               ")";
      });

  m.def(
      "poisson_kernel",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, double rel_tol) {
        return poisson_kernel(query(t, x, y), spec_with(rel_tol));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("rel_tol") = 1e-10);
  m.def(
      "dt_poisson_kernel",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, double rel_tol) {
        return dt_poisson_kernel(query(t, x, y), spec_with(rel_tol));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("rel_tol") = 1e-10);
  m.def(
      "dx_poisson_kernel",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, std::size_t i, double rel_tol) {
        return dx_poisson_kernel(query(t, x, y), i, spec_with(rel_tol));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("i"), py::arg("rel_tol") = 1e-10,
      "d/dx_i P_t(x, y), i is 1-based");

  m.def(
      "k_bound",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, double c) {
        return bound_dict(k_bound(query(t, x, y), ExpStarConfig(c)));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("c") = 0.01);
  m.def(
      "z_bound",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, double c) {
        return bound_dict(z_bound(query(t, x, y), ExpStarConfig(c)));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("c") = 0.01);
  m.def("k2_tilde_1d", &k2_tilde_1d, py::arg("t"), py::arg("x"), py::arg("y"));
  m.def(
      "in_sharpness_set",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, const std::string& which) {
        return in_sharpness_set(query(t, x, y), parse_sharp_set(which));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("which"));
  m.def(
      "in_epsilon_set",
      [](double t, const std::vector<double>& x, const std::vector<double>& y, const std::string& which,
         double c_eps) { return in_epsilon_set(query(t, x, y), parse_sharp_set(which), c_eps); },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("which"), py::arg("c_eps"));

  m.def(
      "glip_profile",
      [](const std::string& field, std::size_t dim, double alpha, const std::vector<double>& ts,
         const std::vector<std::vector<double>>& xs) {
        const FieldPtr f = parse_field(field, dim);
        std::vector<EuclideanPoint> pts;
        for (const auto& x : xs) pts.emplace_back(x);
        GlipEstimate est;
        {
          py::gil_scoped_release release;
          est = glip_seminorm_estimate(*f, HolderExponent(alpha), ts, pts);
        }
        py::list profile;
        for (const auto& p : est.profile) {
          py::dict d;
          d["t"] = p.t;
          d["sup_dt"] = p.sup_dt;
          d["weighted"] = p.weighted;
          profile.append(d);
        }
        py::dict out;
        out["seminorm"] = est.seminorm;
        out["profile"] = profile;
        out["cross_checked"] = est.cross_checked;
        return out;
      },
      py::arg("field"), py::arg("dim"), py::arg("alpha"), py::arg("t_grid"), py::arg("x_samples"),
      "t^{1-alpha} sup_x |d_t P_t f| on a grid; field uses the CLI syntax, e.g. 'gauss-bump' or 'grid(path)'");
  m.def(
      "lip_constant",
      [](const std::string& field, std::size_t dim, double alpha,
         const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs) {
        const FieldPtr f = parse_field(field, dim);
        std::vector<PointPair> ps;
        for (const auto& [a, b] : pairs) ps.emplace_back(EuclideanPoint(a), EuclideanPoint(b));
        return lip_constant_estimate(*f, ps, HolderExponent(alpha));
      },
      py::arg("field"), py::arg("dim"), py::arg("alpha"), py::arg("pairs"));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suites",
      [](const std::vector<std::string>& names, const std::string& config_text) {
        const RunConfig cfg = RunConfig::parse(config_text, "<python>");
        std::vector<SuiteResult> res;
        {
          py::gil_scoped_release release;
          res = run_suites(names, cfg.verify);
        }
        py::list out;
        for (const auto& r : res) {
          py::list rows;
          for (const auto& row : r.rows) rows.append(report_dict(row));
          py::dict d;
          d["suite"] = r.suite;
          d["pass"] = r.pass;
          d["rows"] = rows;
          out.append(d);
        }
        return out;
      },
      py::arg("names"), py::arg("config_text") = "",
      "Runs verification suites; config_text uses the key = value config syntax");
  m.def("set_thread_count", &set_thread_count, py::arg("n"));
}
