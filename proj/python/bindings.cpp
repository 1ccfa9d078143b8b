#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "elocc/criticality.hpp"
#include "elocc/eigensolver.hpp"
#include "elocc/error.hpp"
#include "elocc/model_spec.hpp"
#include "elocc/monotone.hpp"
#include "elocc/reduction.hpp"

namespace py = pybind11;
using namespace elocc;

namespace {

Bipartition cut_for(const std::string& cut, int n) {
  return cut.empty() ? half_chain(n) : Bipartition::parse(cut, n);
}

std::vector<double> to_vector(const SchmidtVector& v) { return {v.coeffs().begin(), v.coeffs().end()}; }

SweepRequest request_for(const std::string& model, const std::string& parameter, int n, const std::string& cut,
                         bool excited, double trunc) {
  SweepRequest req{ModelSpec::parse(model), parameter, n, std::nullopt};
  if (!cut.empty()) req.cut = Bipartition::parse(cut, n);
  req.with_excited = excited;
  req.trunc_tol = trunc;
  return req;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement-assisted LOCC diagnostics for spin-chain ground states.";

  py::exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object type = py::module_::import("elocc._core").attr("Error");
      const py::object exc = type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<SchmidtVector>(m, "SchmidtVector")
      .def(py::init([](const std::vector<double>& raw, double trunc) { return normalize_descending(raw, trunc); }),
           py::arg("values"), py::arg("trunc_tol") = kDefaultTruncation)
      .def_property_readonly("coeffs", &to_vector)
      .def_property_readonly("rank", &SchmidtVector::rank)
      .def("__len__", &SchmidtVector::rank)
      .def("__getitem__",
           [](const SchmidtVector& v, std::size_t k) {
             if (k >= v.rank()) throw py::index_error();
             return v[k];
           })
      .def("approx_equal", &SchmidtVector::approx_equal, py::arg("other"), py::arg("tol") = 1e-10)
      .def("__repr__", [](const SchmidtVector& v) {
        return "SchmidtVector(" + py::repr(py::cast(to_vector(v))).cast<std::string>() + ")";
      });

  py::class_<AlphaGrid>(m, "AlphaGrid")
      .def(py::init([](double lo, double hi, int points, double refine) {
             AlphaGrid g{lo, hi, points, refine};
             g.validate();
             return g;
           }),
           py::arg("alpha_min") = 0.1, py::arg("alpha_max") = 50.0, py::arg("points") = 500,
           py::arg("refine_tol") = 1e-6)
      .def_readonly("alpha_min", &AlphaGrid::alpha_min)
      .def_readonly("alpha_max", &AlphaGrid::alpha_max)
      .def_readonly("points", &AlphaGrid::points)
      .def_readonly("refine_tol", &AlphaGrid::refine_tol);

  py::enum_<Direction>(m, "Direction")
      .value("AtoB", Direction::AtoB)
      .value("BtoA", Direction::BtoA)
      .value("Equivalent", Direction::Equivalent)
      .value("Incomparable", Direction::Incomparable);

  py::class_<ConversionVerdict>(m, "ConversionVerdict")
      .def_readonly("direction", &ConversionVerdict::direction)
      .def_readonly("crossings", &ConversionVerdict::crossings);

  m.def("locc_convertible", &locc_convertible, py::arg("source"), py::arg("target"));
  m.def("renyi_entropy", &renyi_entropy, py::arg("p"), py::arg("alpha"));
  m.def("tensor_product", &tensor_product, py::arg("p"), py::arg("c"));
  m.def("verify_catalyst", &verify_catalyst, py::arg("p"), py::arg("q"), py::arg("c"));
  m.def("find_interceptions", &find_interceptions, py::arg("p"), py::arg("q"), py::arg("grid") = AlphaGrid{});
  m.def("elocc_verdict", &elocc_verdict, py::arg("p"), py::arg("q"), py::arg("grid") = AlphaGrid{});

  m.def(
      "lowest_states",
      [](const std::string& model, int n, int k) {
        std::vector<std::pair<double, Eigen::VectorXd>> out;
        for (auto& p : lowest_states(ModelSpec::parse(model).build(n), k)) out.emplace_back(p.energy, std::move(p.state));
        return out;
      },
      py::arg("model"), py::arg("n_sites"), py::arg("k") = 1,
      "(energy, state) pairs for the k lowest levels of a fully specified model.");
  m.def(
      "schmidt_from_state",
      [](const Eigen::VectorXd& state, const std::string& cut, double trunc) {
        int n = 0;
        while ((Eigen::Index{1} << n) < state.size()) ++n;
        return schmidt_from_state(state, cut_for(cut, n), trunc);
      },
      py::arg("state"), py::arg("cut") = "", py::arg("trunc_tol") = kDefaultTruncation);

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("value", &SweepPoint::value)
      .def_readonly("ground_energy", &SweepPoint::ground_energy)
      .def_readonly("ground", &SweepPoint::ground)
      .def_readonly("ground_degenerate", &SweepPoint::ground_degenerate)
      .def_readonly("excited_energy", &SweepPoint::excited_energy)
      .def_readonly("excited", &SweepPoint::excited);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("parameter", &SweepResult::parameter)
      .def_readonly("n_sites", &SweepResult::n_sites)
      .def_property_readonly("model", [](const SweepResult& s) { return s.model.to_string(); })
      .def_property_readonly("cut", [](const SweepResult& s) { return s.cut.to_string(); })
      .def_readonly("points", &SweepResult::points);

  m.def(
      "sweep",
      [](const std::string& model, const std::string& parameter, double from, double to, double step, int n,
         const std::string& cut, bool excited, double trunc, int workers) {
        const auto req = request_for(model, parameter, n, cut, excited, trunc);
        py::gil_scoped_release release;
        return sweep(req, ParamRange{from, to, step}, ExecutionOptions{workers});
      },
      py::arg("model"), py::arg("parameter"), py::arg("start"), py::arg("stop"), py::arg("step"),
      py::arg("n_sites") = 10, py::arg("cut") = "", py::arg("excited") = false,
      py::arg("trunc_tol") = kDefaultTruncation, py::arg("workers") = 1);

  py::class_<InterceptionTable>(m, "InterceptionTable")
      .def_property_readonly("labels",
                             [](const InterceptionTable& t) { return std::vector<double>(t.labels().begin(), t.labels().end()); })
      .def("__len__", &InterceptionTable::size)
      .def("cell", &InterceptionTable::cell, py::arg("i"), py::arg("j"))
      .def("crossings", &InterceptionTable::crossings, py::arg("i"), py::arg("j"))
      .def("index_of", &InterceptionTable::index_of, py::arg("value"));

  m.def(
      "interception_table",
      [](const SweepResult& s, const AlphaGrid& grid, int workers) {
        py::gil_scoped_release release;
        return interception_table(s, grid, ExecutionOptions{workers});
      },
      py::arg("sweep"), py::arg("grid") = AlphaGrid{}, py::arg("workers") = 1);
  m.def("round_up_tenth", &round_up_tenth, py::arg("alpha"));

  py::enum_<Pattern>(m, "Pattern")
      .value("CaseI", Pattern::CaseI)
      .value("CaseII", Pattern::CaseII)
      .value("Mixed", Pattern::Mixed);

  py::class_<PatternReport>(m, "PatternReport")
      .def_readonly("pattern", &PatternReport::pattern)
      .def_readonly("crossing_phase_first", &PatternReport::crossing_phase_first)
      .def_readonly("nonconforming_fraction", &PatternReport::nonconforming_fraction);

  m.def(
      "classify_pattern",
      [](const InterceptionTable& t, double split, double tolerance) {
        return classify_pattern(t, t.index_of(split), tolerance);
      },
      py::arg("table"), py::arg("split"), py::arg("tolerance") = 0.1,
      "Classify with the second group starting at the label `split`.");

  py::class_<Bracket>(m, "Bracket")
      .def_readonly("lower", &Bracket::lower)
      .def_readonly("upper", &Bracket::upper)
      .def_readonly("step", &Bracket::step)
      .def_property_readonly("midpoint", &Bracket::midpoint)
      .def("__repr__", [](const Bracket& b) {
        return "Bracket(" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + ")";
      });

  py::class_<BracketTrace>(m, "BracketTrace")
      .def_readonly("bracket", &BracketTrace::bracket)
      .def_readonly("levels", &BracketTrace::levels);

  m.def(
      "table_boundary",
      [](const InterceptionTable& t, double split, Pattern pattern) {
        return table_boundary(t, t.index_of(split), pattern);
      },
      py::arg("table"), py::arg("split"), py::arg("pattern"));

  m.def(
      "locate_boundary",
      [](const std::string& model, const std::string& parameter, double from, double to, int n,
         const std::string& cut, double target_step, const AlphaGrid& grid, int workers) {
        BoundaryRequest req{request_for(model, parameter, n, cut, false, kDefaultTruncation), from, to, target_step,
                            grid};
        py::gil_scoped_release release;
        return locate_boundary(req, ExecutionOptions{workers});
      },
      py::arg("model"), py::arg("parameter"), py::arg("start"), py::arg("stop"), py::arg("n_sites") = 10,
      py::arg("cut") = "", py::arg("target_step") = 1e-3, py::arg("grid") = AlphaGrid{}, py::arg("workers") = 1);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("a", &ScalingFit::a)
      .def_readonly("b", &ScalingFit::b)
      .def_readonly("c", &ScalingFit::c)
      .def_readonly("rms_residual", &ScalingFit::rms_residual)
      .def_readonly("degenerate", &ScalingFit::degenerate)
      .def("__call__", &ScalingFit::operator(), py::arg("n"));

  m.def(
      "scaling_fit",
      [](const std::vector<std::pair<int, double>>& points) {
        std::vector<ScalingPoint> pts;
        for (const auto& [n, gc] : points) pts.push_back({n, gc});
        return scaling_fit(pts);
      },
      py::arg("points"), "Fit g_c(N) = a exp(-N / b) + c to (N, g_c) pairs.");

  py::class_<ExcitedComparison>(m, "ExcitedComparison")
      .def_readonly("verdict", &ExcitedComparison::verdict)
      .def_readonly("ground_energy", &ExcitedComparison::ground_energy)
      .def_readonly("excited_energy", &ExcitedComparison::excited_energy)
      .def_readonly("ground", &ExcitedComparison::ground)
      .def_readonly("excited", &ExcitedComparison::excited)
      .def_readonly("large_alpha_gap", &ExcitedComparison::large_alpha_gap);

  m.def(
      "gs_vs_excited",
      [](const std::string& model, int n, const std::string& cut, const AlphaGrid& grid) {
        return gs_vs_excited(ModelSpec::parse(model), n, cut_for(cut, n), grid);
      },
      py::arg("model"), py::arg("n_sites") = 10, py::arg("cut") = "", py::arg("grid") = AlphaGrid{});
}
