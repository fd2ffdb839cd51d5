#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dunkl/cli.hpp"
#include "dunkl/estimates.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/suites.hpp"

namespace py = pybind11;
using namespace dunkl;

namespace {

Vector vec(const std::vector<double>& v) { return Vector(v); }
std::vector<double> list(const Vector& v) { return {v.begin(), v.end()}; }

double kernel(const std::string& kind, int d, double k, const std::vector<double>& x, const std::vector<double>& y,
              double tol) {
  return evaluate(parse_kernel_kind(kind), make_params(d, k), vec(x), vec(y), tol).value();
}

py::dict scan(const std::string& theorem, int d, double k, int n, std::uint64_t seed) {
  const ScanReport r = scan_theorem(parse_theorem(theorem), make_params(d, k), n, seed);
  py::dict out;
  out["theorem"] = r.theorem;
  out["d"] = r.d;
  out["k"] = r.k;
  out["n"] = r.n_samples;
  out["seed"] = r.seed;
  out["ratio_min"] = r.ratio_min;
  out["ratio_max"] = r.ratio_max;
  out["argmin"] = py::make_tuple(list(r.argmin_x), list(r.argmin_y));
  out["argmax"] = py::make_tuple(list(r.argmax_x), list(r.argmax_y));
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_dunklpot, m) {
  m.doc() = "Rank-one Dunkl potential theory kernels and checks";

  py::register_exception<Error>(m, "DunklError", PyExc_ValueError);

  py::class_<Params>(m, "Params")
      .def(py::init(&make_params), py::arg("d"), py::arg("k"))
      .def_readonly("d", &Params::d)
      .def_readonly("k", &Params::k)
      .def_readonly("c_k", &Params::c_k)
      .def_readonly("d_k", &Params::d_k)
      .def_readonly("C_k", &Params::C_k)
      .def_property_readonly("newton_prefactor", &Params::newton_prefactor)
      .def("__repr__", [](const Params& p) {
        return "Params(d=" + std::to_string(p.d) + ", k=" + format_value(p.k) + ")";
      });

  m.def("kernel", &kernel, py::arg("kind"), py::arg("d"), py::arg("k"), py::arg("x"), py::arg("y"),
        py::arg("tol") = kDefaultTol, "Evaluates a kernel by name; returns inf on the orbit of y.");
  m.def("from_a1_basis", [](const std::vector<double>& z) { return list(from_a1_basis(vec(z))); });
  m.def("to_a1_basis", [](const std::vector<double>& x) { return list(to_a1_basis(vec(x))); });
  m.def("scan", &scan, py::arg("theorem"), py::arg("d"), py::arg("k"), py::arg("n") = 10000, py::arg("seed") = 1);
  m.def(
      "verify",
      [](const std::string& suite, int d, double k, int n, std::uint64_t seed) {
        SuiteOptions opts;
        opts.n = n;
        opts.seed = seed;
        return to_json(run_suite(parse_suite(suite), make_params(d, k), opts));
      },
      py::arg("suite"), py::arg("d") = 2, py::arg("k") = 1.0, py::arg("n") = 0, py::arg("seed") = 1,
      "Runs a verification suite and returns its JSON report.");
  m.def("run_cli", &cli, py::arg("args"), "Runs the command line tool; returns (exit_code, stdout, stderr).");
}
