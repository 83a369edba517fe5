#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specdet/branchlog.hpp"
#include "specdet/determinant.hpp"
#include "specdet/error.hpp"
#include "specdet/oracle.hpp"
#include "specdet/spectrum.hpp"
#include "specdet/zetafuncs.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace sd = specdet;

PYBIND11_MODULE(_specdet, m) {
  m.doc() = "Zeta-regularized spectral determinants with an explicit branch cut";

  static py::exception<sd::Error> error_type(m, "SpecdetError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sd::Error& e) {
      const std::string message =
          std::string(sd::to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error_type.ptr(), message.c_str());
    }
  });

  // branchlog
  py::class_<sd::BranchCut>(m, "BranchCut")
      .def(py::init<double>(), "beta"_a)
      .def_readonly("beta", &sd::BranchCut::beta)
      .def("__repr__", [](const sd::BranchCut& c) {
        return "BranchCut(" + py::repr(py::float_(c.beta)).cast<std::string>() +
               ")";
      });

  py::enum_<sd::OnCut>(m, "OnCut")
      .value("reject", sd::OnCut::reject)
      .value("upper", sd::OnCut::upper);

  m.def("arg_in_branch", &sd::arg_in_branch, "z"_a, "cut"_a,
        "policy"_a = sd::OnCut::reject);
  m.def("log_branch", &sd::log_branch, "z"_a, "cut"_a,
        "policy"_a = sd::OnCut::reject);
  m.def("pow_branch", &sd::pow_branch, "z"_a, "w"_a, "cut"_a,
        "policy"_a = sd::OnCut::reject);

  // zetafuncs
  py::class_<sd::EMParams>(m, "EMParams")
      .def(py::init([](int M, int K) {
             sd::EMParams p{M, K};
             p.validate();
             return p;
           }),
           "M"_a = 30, "K"_a = 12)
      .def_readonly("M", &sd::EMParams::M)
      .def_readonly("K", &sd::EMParams::K);

  m.def(
      "_bernoulli",
      [](int upto) {
        const auto table = sd::bernoulli(upto);
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& b : table.values()) {
          out.emplace_back(numerator(b).str(), denominator(b).str());
        }
        return out;
      },
      "upto"_a);
  m.def("hurwitz_zeta", &sd::hurwitz_zeta, "s"_a, "a"_a,
        "params"_a = sd::EMParams{});
  m.def("hurwitz_zeta_ds", &sd::hurwitz_zeta_ds, "s"_a, "a"_a,
        "params"_a = sd::EMParams{});
  m.def("riemann_zeta", &sd::riemann_zeta, "s"_a, "params"_a = sd::EMParams{});
  m.def("riemann_zeta_ds", &sd::riemann_zeta_ds, "s"_a,
        "params"_a = sd::EMParams{});
  m.def("hermite_check", &sd::hermite_check, "s"_a, "a"_a);

  // spectrum
  py::class_<sd::FiniteSet>(m, "FiniteSet")
      .def(py::init<std::vector<sd::Complex>>(), "eigenvalues"_a)
      .def_readonly("eigenvalues", &sd::FiniteSet::eigenvalues);
  py::class_<sd::PowerRays>(m, "PowerRays")
      .def(py::init<double, double, std::vector<double>>(), "c1"_a, "c2"_a,
           "angles"_a)
      .def_readonly("c1", &sd::PowerRays::c1)
      .def_readonly("c2", &sd::PowerRays::c2)
      .def_readonly("angles", &sd::PowerRays::angles);
  py::class_<sd::ExponentialRay>(m, "ExponentialRay")
      .def(py::init<double, double, double>(), "c1"_a, "c2"_a, "alpha"_a)
      .def_readonly("c1", &sd::ExponentialRay::c1)
      .def_readonly("c2", &sd::ExponentialRay::c2)
      .def_readonly("alpha", &sd::ExponentialRay::alpha);
  py::class_<sd::LogarithmicRay>(m, "LogarithmicRay")
      .def(py::init<double, double, double>(), "c1"_a, "c2"_a, "alpha"_a)
      .def_readonly("c1", &sd::LogarithmicRay::c1)
      .def_readonly("c2", &sd::LogarithmicRay::c2)
      .def_readonly("alpha", &sd::LogarithmicRay::alpha);
  py::class_<sd::ShiftedLine>(m, "ShiftedLine")
      .def(py::init<double>(), "b"_a)
      .def_readonly("b", &sd::ShiftedLine::b);

  py::class_<sd::Spectrum>(m, "Spectrum")
      .def(py::init<std::vector<sd::SpectrumComponent>>(), "components"_a)
      .def_property_readonly("components", &sd::Spectrum::components);

  py::enum_<sd::ClassificationTag>(m, "ClassificationTag")
      .value("DeterminantDefined", sd::ClassificationTag::DeterminantDefined)
      .value("DeterminantDivergent", sd::ClassificationTag::DeterminantDivergent)
      .value("ZetaUndefined", sd::ClassificationTag::ZetaUndefined);

  py::class_<sd::Classification>(m, "Classification")
      .def_readonly("tag", &sd::Classification::tag)
      .def_readonly("reason", &sd::Classification::reason);

  m.def("classify", &sd::classify, "spectrum"_a);
  m.def("enumerate", &sd::enumerate, "spectrum"_a, "count"_a,
        "component_index"_a = 0);
  m.def("rays_crossed", &sd::rays_crossed, "spectrum"_a, "beta_from"_a,
        "beta_to"_a);

  // determinant
  py::class_<sd::ZetaClosedForm>(m, "ZetaClosedForm")
      .def_readonly("cut", &sd::ZetaClosedForm::cut)
      .def("__call__", &sd::eval_zeta, "s"_a)
      .def_property_readonly("term_count", [](const sd::ZetaClosedForm& f) {
        return f.terms.size();
      });

  py::class_<sd::DeterminantReport>(m, "DeterminantReport")
      .def_readonly("classification", &sd::DeterminantReport::classification)
      .def_readonly("cut", &sd::DeterminantReport::cut)
      .def_readonly("zeta_prime_at_zero",
                    &sd::DeterminantReport::zeta_prime_at_zero)
      .def_readonly("determinant", &sd::DeterminantReport::determinant)
      .def_readonly("error_estimate", &sd::DeterminantReport::error_estimate);

  m.def("build_zeta", &sd::build_zeta, "spectrum"_a, "cut"_a,
        "params"_a = sd::EMParams{});
  m.def("eval_zeta", &sd::eval_zeta, "form"_a, "s"_a);
  m.def("zeta_prime_at_zero", &sd::zeta_prime_at_zero, "form"_a);
  m.def("determinant", &sd::determinant, "spectrum"_a, "cut"_a,
        "params"_a = sd::EMParams{});
  m.def("compare_cuts", &sd::compare_cuts, "spectrum"_a, "cut1"_a, "cut2"_a,
        "params"_a = sd::EMParams{});

  // oracle
  auto oracle = m.def_submodule("oracle", "Independent numerical checks");
  py::class_<sd::oracle::OracleConfig>(oracle, "OracleConfig")
      .def(py::init([](int truncation, int tail_terms, double fd_step,
                       double tolerance) {
             sd::oracle::OracleConfig c{truncation, tail_terms, fd_step,
                                        tolerance};
             c.validate();
             return c;
           }),
           "truncation"_a = 2000, "tail_terms"_a = 8, "fd_step"_a = 1e-6,
           "tolerance"_a = 1e-8);
  oracle.def(
      "direct_zeta",
      [](const sd::Spectrum& spectrum, sd::BranchCut cut, sd::Complex s,
         const sd::oracle::OracleConfig& cfg) {
        const auto r = sd::oracle::direct_zeta(spectrum, cut, s, cfg);
        return py::make_tuple(r.value, r.error);
      },
      "spectrum"_a, "cut"_a, "s"_a, "cfg"_a = sd::oracle::OracleConfig{});
  oracle.def("fd_zeta_prime", &sd::oracle::fd_zeta_prime, "form"_a, "s0"_a,
             "cfg"_a = sd::oracle::OracleConfig{});
  oracle.def("divergence_witness", &sd::oracle::divergence_witness,
             "spectrum"_a, "s"_a, "checkpoints"_a);
  oracle.def("exp_blowup_witness", &sd::oracle::exp_blowup_witness,
             "spectrum"_a, "s_values"_a);
}
