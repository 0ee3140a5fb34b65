#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "filtspec/compression.hpp"
#include "filtspec/config.hpp"
#include "filtspec/eigensolver.hpp"
#include "filtspec/errors.hpp"
#include "filtspec/operator_model.hpp"
#include "filtspec/spectral_analysis.hpp"

namespace py = pybind11;
using namespace filtspec;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const DenseMatrix& m) {
  py::array_t<double> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
  return out;
}

DenseMatrix from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw DomainError("expected a 2-d array");
  DenseMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
  return m;
}

OperatorConfig wrap(std::string kind, OperatorSpec spec, std::optional<SymbolSpec> symbol = std::nullopt) {
  return OperatorConfig{std::move(kind), {}, std::move(spec), std::move(symbol), std::nullopt};
}

py::dict report_dict(const ClassificationReport& r) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::vector<double>> densities;
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    labels.emplace_back(to_string(r.labels[i]));
    counts.push_back(r.evidence[i].counts);
    densities.push_back(r.evidence[i].densities);
  }
  py::dict d;
  d["grid"] = to_array(r.grid);
  d["epsilon"] = r.epsilon;
  d["ns"] = r.ns;
  d["dims"] = r.dims;
  d["labels"] = labels;
  d["counts"] = counts;
  d["densities"] = densities;
  return d;
}

std::vector<std::pair<double, double>> pairs(const std::vector<Interval>& v) {
  std::vector<std::pair<double, double>> out;
  for (const auto& i : v) out.emplace_back(i.lo, i.hi);
  return out;
}

}  // namespace

PYBIND11_MODULE(_filtspec, m) {
  m.doc() = "Spectra of self-adjoint operators from finite-section compressions";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<DiagnosticError>(m, "DiagnosticError", base.ptr());

  py::class_<OperatorConfig>(m, "Operator")
      .def_readonly("kind", &OperatorConfig::kind)
      .def_property_readonly("bilateral",
                             [](const OperatorConfig& c) { return c.spec.index_mode() == IndexMode::Bilateral; })
      .def_property_readonly("band",
                             [](const OperatorConfig& c) -> std::optional<int> {
                               if (!c.spec.is_banded()) return std::nullopt;
                               return c.spec.band_half_width();
                             })
      .def("entry", [](const OperatorConfig& c, Index i, Index j) { return c.spec.entry(i, j); })
      .def("dim", [](const OperatorConfig& c, int n) { return c.filtration().dim(n); })
      .def("__repr__", [](const OperatorConfig& c) { return "<filtspec.Operator " + c.kind + ">"; });

  m.def("parse_config", &parse_operator_config_string, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_operator_config(path); }, py::arg("path"));

  m.def(
      "laurent",
      [](const std::vector<double>& one_sided) {
        const auto c = LaurentCoefficients::symmetric(one_sided);
        return wrap("laurent", laurent_operator(c), symbol_from_coefficients(c));
      },
      py::arg("coefficients"));
  m.def(
      "toeplitz",
      [](const std::vector<double>& one_sided) {
        const auto c = LaurentCoefficients::symmetric(one_sided);
        return wrap("toeplitz", toeplitz_operator(c), symbol_from_coefficients(c));
      },
      py::arg("coefficients"));
  m.def(
      "almost_mathieu",
      [](double theta, const std::string& potential) {
        return wrap("almost_mathieu", almost_mathieu_operator(potential_from_name(potential), theta));
      },
      py::arg("theta"), py::arg("potential") = "zero");
  m.def(
      "hamiltonian",
      [](double sigma, const std::string& potential) {
        return wrap("hamiltonian", discretized_hamiltonian(potential_from_name(potential), sigma));
      },
      py::arg("sigma"), py::arg("potential") = "zero");
  m.def(
      "permutation",
      [](Index limit) {
        auto pi = appendix_permutation(limit);
        return OperatorConfig{"permutation", {}, permutation_operator(pi), std::nullopt, pi};
      },
      py::arg("limit") = 65536);

  m.def(
      "fourier_coefficients",
      [](const std::string& symbol, int band, int quadrature) {
        return fourier_coefficients(symbol_from_name(symbol, quadrature), band).values();
      },
      py::arg("symbol"), py::arg("band"), py::arg("quadrature") = 4096);

  m.def(
      "compress",
      [](const OperatorConfig& op, int n) { return to_array(compress(op.spec, op.filtration(), n).to_dense()); },
      py::arg("op"), py::arg("n"));
  m.def(
      "eigenvalues",
      [](const OperatorConfig& op, int n) {
        EigenvalueList ev;
        {
          py::gil_scoped_release release;
          ev = compress(op.spec, op.filtration(), n).eigenvalues();
        }
        return to_array(ev.values);
      },
      py::arg("op"), py::arg("n"));
  m.def(
      "symmetric_eigenvalues",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        return to_array(symmetric_eigenvalues(from_array(a)).values);
      },
      py::arg("matrix"));
  m.def(
      "singular_values",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        return to_array(singular_values(from_array(a)));
      },
      py::arg("matrix"));

  py::class_<EigLadder>(m, "Ladder")
      .def_property_readonly("ns",
                             [](const EigLadder& l) {
                               std::vector<int> ns;
                               for (const auto& s : l.steps) ns.push_back(s.n);
                               return ns;
                             })
      .def_property_readonly("dims",
                             [](const EigLadder& l) {
                               std::vector<std::size_t> dims;
                               for (const auto& s : l.steps) dims.push_back(s.dim);
                               return dims;
                             })
      .def("eigenvalues", [](const EigLadder& l, std::size_t i) { return to_array(l.steps.at(i).eigs.values); })
      .def("__len__", [](const EigLadder& l) { return l.steps.size(); });

  m.def(
      "build_ladder",
      [](const OperatorConfig& op, const std::vector<int>& schedule, int workers) {
        py::gil_scoped_release release;
        return build_ladder(op.spec, op.filtration(), schedule, workers);
      },
      py::arg("op"), py::arg("schedule"), py::arg("workers") = 1);

  m.def(
      "szego_gaps",
      [](const OperatorConfig& op, const EigLadder& ladder, const RealFn& u) {
        if (!op.symbol) throw UnsupportedError("operator has no symbol");
        return to_array(weak_star_gap(ladder, szego_reference(*op.symbol, u), u));
      },
      py::arg("op"), py::arg("ladder"), py::arg("u"));

  m.def(
      "counting",
      [](const EigLadder& ladder, std::size_t step, double lo, double hi) {
        return counting(ladder.steps.at(step).eigs, {lo, hi});
      },
      py::arg("ladder"), py::arg("step"), py::arg("lo"), py::arg("hi"));

  m.def(
      "lambda_membership",
      [](const EigLadder& ladder, double lambda, std::optional<double> tol) {
        return lambda_membership(ladder, lambda, tol);
      },
      py::arg("ladder"), py::arg("lam"), py::arg("tol") = py::none());

  m.def(
      "classify",
      [](const EigLadder& ladder, const std::vector<double>& grid, double eps) {
        return report_dict(classify(ladder, grid, eps));
      },
      py::arg("ladder"), py::arg("grid"), py::arg("eps"));

  m.def(
      "spectrum_estimate",
      [](const EigLadder& ladder, std::optional<double> h, std::optional<double> eps, std::optional<double> radius) {
        const double e = eps ? *eps : default_window_radius(ladder);
        const auto est = spectrum_estimate(ladder, h ? *h : e / 2, e, radius);
        py::dict d;
        d["intervals"] = pairs(est.intervals);
        d["essential_runs"] = pairs(est.essential_runs);
        d["h"] = est.h;
        d["epsilon"] = est.epsilon;
        d["radius"] = est.radius;
        d["report"] = report_dict(est.report);
        return d;
      },
      py::arg("ladder"), py::arg("h") = py::none(), py::arg("eps") = py::none(), py::arg("radius") = py::none());

  m.def(
      "degree_estimate", [](const OperatorConfig& op, int n_max) { return degree_estimate(op.spec, op.filtration(), n_max); },
      py::arg("op"), py::arg("n_max") = 64);
  m.def(
      "commutator_hs_norm",
      [](const OperatorConfig& op, int n) { return commutator_hs_norm(op.spec, op.filtration(), n); }, py::arg("op"),
      py::arg("n"));
  m.def(
      "dfnorm_bound", [](const OperatorConfig& op) { return dfnorm_bound(op.spec); }, py::arg("op"));
}
