#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "singosc4/cli.hpp"
#include "singosc4/coords.hpp"
#include "singosc4/errors.hpp"
#include "singosc4/interbasis.hpp"
#include "singosc4/io.hpp"
#include "singosc4/model.hpp"
#include "singosc4/oracle.hpp"
#include "singosc4/spheroidal.hpp"
#include "singosc4/verify.hpp"

namespace py = pybind11;
using namespace singosc4;

namespace {

HalfInt half(const py::object& x) {
  if (py::isinstance<py::str>(x)) return HalfInt::parse(x.cast<std::string>());
  if (py::isinstance<py::int_>(x)) return HalfInt(x.cast<int>());
  throw DomainError("quantum numbers are given as int or exact string such as '1/2'");
}

SectorParams make_sector(const SystemParams& p, const py::object& m, const py::object& s) {
  return sector(p, half(m), half(s));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Four-dimensional double singular oscillator: spectra, interbasis coefficients, spheroidal bases";

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

  py::class_<SystemParams>(mod, "SystemParams")
      .def(py::init([](double mu, double omega, double hbar, double c1, double c2) {
             SystemParams p{mu, omega, hbar, c1, c2};
             p.validate();
             return p;
           }),
           py::kw_only(), py::arg("mu") = 1.0, py::arg("omega") = 1.0, py::arg("hbar") = 1.0, py::arg("c1") = 0.0,
           py::arg("c2") = 0.0)
      .def_readonly("mu", &SystemParams::mu)
      .def_readonly("omega", &SystemParams::omega)
      .def_readonly("hbar", &SystemParams::hbar)
      .def_readonly("c1", &SystemParams::c1)
      .def_readonly("c2", &SystemParams::c2)
      .def_property_readonly("a", &SystemParams::a);

  py::class_<SectorParams>(mod, "SectorParams")
      .def_property_readonly("m", [](const SectorParams& s) { return s.m.str(); })
      .def_property_readonly("s", [](const SectorParams& s) { return s.s.str(); })
      .def_readonly("M1", &SectorParams::M1)
      .def_readonly("M2", &SectorParams::M2)
      .def_readonly("delta1", &SectorParams::delta1)
      .def_readonly("delta2", &SectorParams::delta2)
      .def_readonly("m1", &SectorParams::m1)
      .def_readonly("m2", &SectorParams::m2)
      .def("n1_max", &SectorParams::n1_max)
      .def("__repr__", &SectorParams::str);

  mod.def("sector", &make_sector, py::arg("params"), py::arg("m"), py::arg("s"));
  mod.def("energy", &energy, py::arg("params"), py::arg("N"), py::arg("sector"));
  mod.def(
      "lambda_eigenvalue", [](const py::object& j, const SectorParams& sec) { return lambda_eigenvalue(half(j), sec); },
      py::arg("j"), py::arg("sector"));
  mod.def(
      "euler_states",
      [](int N, const SectorParams& sec) {
        std::vector<std::string> js;
        for (const auto& e : list_euler_states(N, sec)) js.push_back(e.j.str());
        return js;
      },
      py::arg("N"), py::arg("sector"), "j labels of the Eulerian multiplet");
  mod.def(
      "polar_states",
      [](int N, const SectorParams& sec) {
        std::vector<std::pair<int, int>> out;
        for (const auto& p : list_polar_states(N, sec)) out.emplace_back(p.N1, p.N2);
        return out;
      },
      py::arg("N"), py::arg("sector"), "(N1, N2) labels of the double-polar multiplet");

  mod.def(
      "coefficient_table",
      [](int N, const SectorParams& sec, const std::string& method, const SystemParams& p) {
        return coefficient_table(N, sec, parse_coefficient_method(method), p).values;
      },
      py::arg("N"), py::arg("sector"), py::arg("method") = "cg", py::arg("params") = SystemParams{},
      "W[N1, j]; method is '3f2', 'cg' or 'quad'");

  mod.def(
      "solve_spheroidal",
      [](int N, const SectorParams& sec, double R) {
        const auto sol = solve_spheroidal(N, sec, R);
        const auto ro = recursion_residual(sol, RecursionSource::oracle_consistent);
        py::dict d;
        d["q_values"] = sol.q_values;
        d["U"] = sol.U;
        d["V"] = sol.V;
        d["residual_u"] = ro.u_residual;
        d["residual_v"] = ro.v_residual;
        return d;
      },
      py::arg("N"), py::arg("sector"), py::arg("R"));

  mod.def(
      "ks_map",
      [](double u0, double u1, double u2, double u3) {
        const auto k = ks_map(Point4{u0, u1, u2, u3});
        return py::make_tuple(k.x, k.y, k.z, k.gamma);
      },
      py::arg("u0"), py::arg("u1"), py::arg("u2"), py::arg("u3"));

  mod.def(
      "run_verify",
      [](std::vector<std::string> suites, double tol) {
        VerifyConfig cfg;
        cfg.suites = std::move(suites);
        cfg.quad_tol = tol;
        py::gil_scoped_release release;
        const auto rep = run_verify(cfg);
        return dump_json(rep.to_json(cfg));
      },
      py::arg("suites") = std::vector<std::string>{"all"}, py::arg("tol") = 1e-8, "JSON report as a string");

  mod.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "singosc4");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "(exit code, stdout, stderr) of the command line");
}
