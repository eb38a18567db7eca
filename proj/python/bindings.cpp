#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gribov/bargmann.hpp"
#include "gribov/block_assembly.hpp"
#include "gribov/eigensolver.hpp"
#include "gribov/errors.hpp"
#include "gribov/report.hpp"
#include "gribov/spec_io.hpp"
#include "gribov/spectral_analysis.hpp"
#include "gribov/subordination.hpp"

namespace py = pybind11;
using namespace gribov;

namespace {

BlockSpec spec_from(const std::string& text) { return io::parse_spec_text(text, "<spec>"); }

py::dict spectrum_dict(const SpectrumResult& s) {
  py::dict d;
  d["eigenvalues"] = s.eigenvalues;
  d["stabilized"] = s.stabilized;
  d["residual_bound"] = s.residual_bound;
  d["iterations"] = s.iterations;
  d["hermitian"] = s.hermitian;
  d["reference_trunc"] = s.reference_trunc;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral analysis of Gribov block operator matrices";
  m.attr("__version__") = GRIBOV_VERSION;

  static py::exception<Error> error(m, "GribovError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("build_h0", [](std::size_t n) { return bargmann::build_h0(n).dense(); }, py::arg("n"));
  m.def("build_h0_beta", [](std::size_t n, double beta) { return bargmann::build_h0_beta(n, beta).dense(); },
        py::arg("n"), py::arg("beta"));
  m.def("build_s", [](std::size_t n) { return bargmann::build_s(n).dense(); }, py::arg("n"));
  m.def("build_g", [](std::size_t n) { return bargmann::build_g(n).dense(); }, py::arg("n"));
  m.def("build_h1", [](std::size_t n, bool exact) { return bargmann::build_h1(n, exact).dense(); },
        py::arg("n"), py::arg("exact_image") = false);
  m.def(
      "build_scalar_gribov",
      [](std::size_t n, double lambda2, double lambda1, double mu, double lambda, double beta,
         bool exact) {
        return bargmann::build_scalar_gribov(n, {lambda2, lambda1, mu, lambda, beta}, exact).dense();
      },
      py::arg("n"), py::arg("lambda2") = 1.0, py::arg("lambda1") = 0.0, py::arg("mu") = 0.0,
      py::arg("lambda_") = 0.0, py::arg("beta") = 1.0, py::arg("exact_image") = false);

  m.def("validate_spec", [](const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : io::check_document(nlohmann::json::parse(text))) out.emplace_back(d.field, d.reason);
    return out;
  });
  m.def("assemble", [](const std::string& text, std::size_t trunc) { return assemble(spec_from(text), trunc).dense(); },
        py::arg("spec"), py::arg("trunc"));
  m.def("spec_schema", [] { return io::spec_schema().dump(); });

  m.def("eigenvalues", [](const ComplexMatrix& a) { return spectrum_dict(eigenvalues(a)); }, py::arg("matrix"));
  m.def(
      "eigenvectors",
      [](const ComplexMatrix& a) {
        const auto ev = eigenvectors(a, eigenvalues(a));
        return py::make_tuple(ev.vectors, ev.residual_bound, ev.defective_warning);
      },
      py::arg("matrix"));
  m.def(
      "stabilized_spectrum",
      [](const std::string& text, std::size_t trunc, double growth, double rel_tol) {
        const BlockSpec spec = spec_from(text);
        SpectrumResult s;
        {
          py::gil_scoped_release release;
          s = stabilized_spectrum([&spec](std::size_t n) { return assemble(spec, n); }, trunc,
                                  growth, rel_tol);
        }
        return spectrum_dict(s);
      },
      py::arg("spec"), py::arg("trunc"), py::arg("growth") = 2.0, py::arg("rel_tol") = 1e-6);
  m.def("counting",
        [](const std::vector<Complex>& ev, double r) {
          SpectrumResult s;
          s.eigenvalues = ev;
          return counting(s, r);
        },
        py::arg("eigenvalues"), py::arg("r"));
  m.def("eigenbasis_condition", [](const ComplexMatrix& a) { return eigenbasis_condition(a); });

  m.def("example_p6", [](std::size_t n, double a, double lambda2) {
    const ExampleP6Result r = example_p6(n, a, lambda2);
    py::dict d;
    d["gamma"] = r.gamma;
    d["condition_sum"] = r.condition_sum;
    d["S"] = r.s;
    d["S_bound"] = r.s_bound;
    d["satisfied"] = r.satisfied;
    d["hypotheses_met"] = r.hypotheses_met;
    d["warnings"] = r.warnings;
    return d;
  }, py::arg("n"), py::arg("a"), py::arg("lambda2"));

  m.def(
      "report",
      [](const std::string& command, const std::string& spec_path, std::size_t trunc, double growth,
         double rel_tol, double alpha_margin, double gap_factor) {
        const auto cmd = report::parse_command(command);
        if (!cmd) throw Error(ErrorKind::kInvalidInput, "unknown command '" + command + "'");
        report::RunConfig c;
        c.command = *cmd;
        c.spec_path = spec_path;
        c.trunc = trunc;
        c.growth = growth;
        c.rel_tol = rel_tol;
        c.alpha_margin = alpha_margin;
        c.gap_factor = gap_factor;
        return report::build_report(c).dump();
      },
      py::arg("command"), py::arg("spec_path") = "", py::arg("trunc") = 40, py::arg("growth") = 2.0,
      py::arg("rel_tol") = 1e-6, py::arg("alpha_margin") = 0.1, py::arg("gap_factor") = 0.5);
}
