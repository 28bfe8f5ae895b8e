#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dunkl/error.hpp"
#include "dunkl/hardy.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/hilbert.hpp"
#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/transform.hpp"
#include "dunkl/translation.hpp"

namespace py = pybind11;
using namespace dunkl;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<cplx> to_array(const std::vector<cplx>& v) { return py::array_t<cplx>(v.size(), v.data()); }

std::vector<cplx> evaluate(const py::function& f, const std::vector<double>& x) {
  if (x.empty()) return {};
  const auto v = py::array_t<cplx, py::array::c_style | py::array::forcecast>::ensure(f(to_array(x)));
  if (!v || static_cast<std::size_t>(v.size()) != x.size())
    throw py::value_error("f must map an array of nodes to an array of the same length");
  return std::vector<cplx>(v.data(), v.data() + v.size());
}

// f is called with NumPy arrays of nodes here, in the calling thread; the
// library only sees samples, so its worker threads never touch Python.
SampledFunction sample(double lambda, const py::function& f, double X, int n) {
  const GridPtr g = build_weighted_grid(make_parameter(lambda), X, n);
  return SampledFunction::with_tail(g, evaluate(f, g->nodes()), evaluate(f, g->tail_nodes()));
}

}  // namespace

PYBIND11_MODULE(_dunkl, m) {
  m.doc() = "Numerical toolkit for the one-dimensional Dunkl transform";

  py::register_exception<Error>(m, "DunklError", PyExc_RuntimeError);

  py::class_<DunklParameter>(m, "DunklParameter")
      .def_readonly("lambda_", &DunklParameter::lambda)
      .def_readonly("c_lambda", &DunklParameter::c_lambda)
      .def_readonly("c_prime", &DunklParameter::c_prime)
      .def_readonly("c_dprime", &DunklParameter::c_dprime)
      .def_readonly("m_lambda", &DunklParameter::m_lambda)
      .def_readonly("p0", &DunklParameter::p0)
      .def_readonly("gamma_lambda", &DunklParameter::gamma_lambda)
      .def_readonly("p_critical", &DunklParameter::p_critical)
      .def("__repr__", [](const DunklParameter& p) { return "DunklParameter(lambda=" + std::to_string(p.lambda) + ")"; });
  m.def("make_parameter", &make_parameter, py::arg("lam"));

  m.def("bessel_j_normalized", [](double alpha, cplx z) { return bessel_j_normalized(alpha, z); }, py::arg("alpha"),
        py::arg("z"));
  m.def(
      "dunkl_kernel",
      [](double lam, cplx z, const std::string& method) {
        const KernelMethod k = method == "laplace" ? KernelMethod::Laplace : KernelMethod::Series;
        return dunkl_kernel(make_parameter(lam), z, k).value;
      },
      py::arg("lam"), py::arg("z"), py::arg("method") = "series", "E_λ(iz).");

  m.def("poisson_kernel", [](double lam, double x, double y, double t) { return poisson_kernel(make_parameter(lam), x, y, t); },
        py::arg("lam"), py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "conjugate_poisson_kernel",
      [](double lam, double x, double y, double t) { return conjugate_poisson_kernel(make_parameter(lam), x, y, t); },
      py::arg("lam"), py::arg("x"), py::arg("y"), py::arg("t"));
  m.def("hilbert_kernel", [](double lam, double x, double t) { return hilbert_kernel(make_parameter(lam), x, t); },
        py::arg("lam"), py::arg("x"), py::arg("t"));
  m.def("poisson_profile", [](double lam, double y, double x) { return poisson_profile(make_parameter(lam), y, x); },
        py::arg("lam"), py::arg("y"), py::arg("x"));
  m.def("conjugate_profile", [](double lam, double y, double x) { return conjugate_profile(make_parameter(lam), y, x); },
        py::arg("lam"), py::arg("y"), py::arg("x"));
  m.def("kernel_W", [](double lam, double x, double t, double z) { return kernel_W(make_parameter(lam), x, t, z); },
        py::arg("lam"), py::arg("x"), py::arg("t"), py::arg("z"));

  m.def(
      "grid_nodes", [](double lam, double X, int n) { return to_array(build_weighted_grid(make_parameter(lam), X, n)->nodes()); },
      py::arg("lam"), py::arg("X"), py::arg("n"));
  m.def(
      "forward",
      [](double lam, const py::function& f, double X, int n, double Xi) {
        const DunklParameter p = make_parameter(lam);
        const SampledFunction s = sample(lam, f, X, n);
        const GridPtr k = build_weighted_grid(p, Xi, n);
        return py::make_tuple(to_array(k->nodes()), to_array(forward(p, s, k).values()));
      },
      py::arg("lam"), py::arg("f"), py::arg("X") = 20.0, py::arg("n") = 768, py::arg("Xi") = 20.0,
      "Samples f on a weighted grid and returns (xi, F_λ f(xi)).");
  m.def(
      "plancherel_defect",
      [](double lam, const py::function& f, double X, int n) {
        return plancherel_defect(make_parameter(lam), sample(lam, f, X, n));
      },
      py::arg("lam"), py::arg("f"), py::arg("X") = 20.0, py::arg("n") = 768);
  m.def(
      "hilbert_multiplier",
      [](double lam, const py::function& f, double X, int n, double Xi) {
        const DunklParameter p = make_parameter(lam);
        const SampledFunction s = sample(lam, f, X, n);
        const SampledFunction h = hilbert_multiplier(p, s, build_weighted_grid(p, Xi, n));
        return py::make_tuple(to_array(s.grid().nodes()), to_array(h.values()));
      },
      py::arg("lam"), py::arg("f"), py::arg("X") = 12.0, py::arg("n") = 768, py::arg("Xi") = 36.0,
      "Returns (x, H_λ f(x)) on the grid.");

  py::enum_<AtomShape>(m, "AtomShape")
      .value("SignSplit", AtomShape::SignSplit)
      .value("HaarLike", AtomShape::HaarLike)
      .value("RandomZeroMean", AtomShape::RandomZeroMean);
  py::class_<Atom>(m, "Atom")
      .def_readonly("t0", &Atom::t0)
      .def_readonly("delta", &Atom::delta)
      .def_readonly("p", &Atom::p)
      .def_readonly("edges", &Atom::edges)
      .def_readonly("heights", &Atom::heights)
      .def_readonly("measure", &Atom::measure)
      .def("__call__", &Atom::operator())
      .def("sup_norm", &Atom::sup_norm)
      .def("moment", &Atom::moment);
  m.def(
      "make_atom",
      [](double lam, double t0, double delta, double p, AtomShape shape, std::uint64_t seed) {
        return make_atom(make_parameter(lam), t0, delta, p, shape, seed);
      },
      py::arg("lam"), py::arg("t0"), py::arg("delta"), py::arg("p"), py::arg("shape") = AtomShape::SignSplit,
      py::arg("seed") = 0);
  m.def(
      "check_atom",
      [](double lam, const Atom& a) {
        const AtomInvariants inv = check_atom(make_parameter(lam), a);
        py::dict d;
        d["support"] = inv.support;
        d["size"] = inv.size;
        d["cancellation"] = inv.cancellation;
        d["ok"] = inv.ok();
        return d;
      },
      py::arg("lam"), py::arg("atom"));
  m.def(
      "hp_quasinorm",
      [](double lam, const Atom& a, double p, int level) {
        AtomLatticeOptions opt;
        opt.level = level;
        return hp_quasinorm(make_parameter(lam), single(a), p, opt).value;
      },
      py::arg("lam"), py::arg("atom"), py::arg("p"), py::arg("level") = 0, "Discrete ‖P*a‖^p of one atom.");
  m.def(
      "estimate_a",
      [](double lam, const std::vector<double>& b) {
        const EstimateATable t = estimate_a_check(make_parameter(lam), b);
        py::dict d;
        d["C"] = t.C;
        d["C_refined"] = t.C_refined;
        d["stability"] = t.stability;
        std::vector<double> scaled;
        for (const auto& r : t.rows) scaled.push_back(r.scaled);
        d["scaled"] = to_array(scaled);
        return d;
      },
      py::arg("lam"), py::arg("b"));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::map<std::string, std::string>& settings) {
        SuiteConfig c;
        for (const auto& [k, v] : settings) apply_setting(c, k, v);
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(c);
        }
        return py::make_tuple(report_json(r), report_csv(r));
      },
      py::arg("settings"),
      "Runs a verification suite from key=value settings and returns the (json, csv) report text.");
}
