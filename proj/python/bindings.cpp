#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "friablelab/characters.hpp"
#include "friablelab/cli.hpp"
#include "friablelab/dickman.hpp"
#include "friablelab/errors.hpp"
#include "friablelab/saddle.hpp"
#include "friablelab/smooth.hpp"
#include "friablelab/titchmarsh.hpp"

namespace py = pybind11;
using namespace friablelab;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"friablelab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "friablelab native core";

  auto base = py::register_exception<Error>(m, "Error");
  auto capacity = py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", capacity.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NonInvertibleError>(m, "NonInvertibleError", domain.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<FactorTable>(m, "FactorTable")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("limit"),
           py::arg("cap") = kDefaultFactorCap, py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("limit", &FactorTable::limit);

  m.def("psi",
        [](double x, double y, const FactorTable& ft, const std::string& method) {
          if (method != "scan" && method != "recurrence") {
            throw DomainError("method must be scan or recurrence");
          }
          return psi(x, y, ft, method == "scan" ? PsiMethod::scan : PsiMethod::recurrence);
        },
        py::arg("x"), py::arg("y"), py::arg("ft"), py::arg("method") = "scan");
  m.def("psi_coprime", &psi_coprime, py::arg("x"), py::arg("y"), py::arg("q"), py::arg("ft"));
  m.def("psi_progression", &psi_progression, py::arg("x"), py::arg("y"), py::arg("a"),
        py::arg("q"), py::arg("ft"));

  py::class_<DickmanTable>(m, "DickmanTable")
      .def_property_readonly("u_max", &DickmanTable::u_max)
      .def_property_readonly("step", &DickmanTable::step)
      .def("__call__", &DickmanTable::operator(), py::arg("u"))
      .def("max_integral_residual", py::overload_cast<>(&DickmanTable::max_integral_residual, py::const_));
  m.def("build_rho_table", &build_rho_table, py::arg("u_max") = 20.0, py::arg("step") = 1.0 / 256,
        py::arg("interpolation_order") = 3);
  m.def("lambda_smooth",
        [](double x, double y, const DickmanTable& tab) { return lambda_smooth(x, y, tab); },
        py::arg("x"), py::arg("y"), py::arg("tab"));

  py::class_<SaddleResult>(m, "SaddleResult")
      .def_readonly("alpha", &SaddleResult::alpha)
      .def_readonly("residual", &SaddleResult::residual)
      .def_readonly("iterations", &SaddleResult::iterations);
  m.def("saddle_alpha", &saddle_alpha, py::arg("x"), py::arg("y"), py::arg("ft"));

  py::class_<KloostermanResult>(m, "KloostermanResult")
      .def_readonly("value", &KloostermanResult::value)
      .def_readonly("imag", &KloostermanResult::imag)
      .def_readonly("weil_bound", &KloostermanResult::weil_bound)
      .def_readonly("weil_ratio", &KloostermanResult::weil_ratio);
  m.def("kloosterman", &kloosterman, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("omega_eps", &omega_eps, py::arg("k"), py::arg("r"), py::arg("cutoff"));

  m.def("titchmarsh_sum", &titchmarsh_sum, py::arg("x"), py::arg("y"), py::arg("ft"),
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("titchmarsh_sum_split", &titchmarsh_sum_split, py::arg("x"), py::arg("y"), py::arg("ft"));
  m.def("c_alpha",
        [](double alpha, std::uint64_t cutoff, const FactorTable& ft) {
          const auto c = c_alpha(alpha, cutoff, ft);
          return py::make_tuple(c.value, c.tail_bar);
        },
        py::arg("alpha"), py::arg("p_cutoff"), py::arg("ft"));
  m.def("gh_values",
        [](std::uint64_t n, const FactorTable& ft) {
          const auto v = gh_values(n, ft);
          return py::make_tuple(v.g, v.h);
        },
        py::arg("n"), py::arg("ft"));

  m.def("run_cli", &run_cli, py::arg("args"),
        "Run one friablelab subcommand; returns (exit_code, stdout, stderr).");
}
