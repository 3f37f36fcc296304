#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rankassign/bench.hpp"
#include "rankassign/datagen.hpp"
#include "rankassign/exact_solver.hpp"
#include "rankassign/gibbs.hpp"
#include "rankassign/graph.hpp"
#include "rankassign/io.hpp"
#include "rankassign/metrics.hpp"
#include "rankassign/postproc.hpp"

namespace py = pybind11;
using namespace rankassign;

namespace {

CostMatrix make_cost(const std::vector<std::vector<double>>& detected, const std::vector<double>& misdetect) {
  const std::size_t measurements = detected.empty() ? 0 : detected.front().size();
  return CostMatrix::create(misdetect.size(), measurements, detected, misdetect);
}

DenseScores make_dense(const std::vector<std::vector<double>>& nested) {
  DenseScores d(nested.size(), nested.empty() ? 0 : nested.front().size());
  for (std::size_t r = 0; r < nested.size(); ++r) {
    if (nested[r].size() != d.cols) throw Error(ErrorCode::ShapeMismatch, "ragged score matrix");
    for (std::size_t c = 0; c < d.cols; ++c) d.at(r, c) = nested[r][c];
  }
  return d;
}

std::vector<CellPair> cells(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<CellPair> out;
  for (auto [r, c] : pairs) out.push_back({r, c});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ranked assignment engine";

  py::exception<Error>(m, "RankAssignError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string code(to_string(e.code()));
      py::object type = py::module_::import("rankassign._core").attr("RankAssignError");
      py::object inst = type(code + ": " + e.what());
      inst.attr("code") = code;
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  m.attr("INF") = kInf;
  m.attr("DEFAULT_THETA") = kDefaultTheta;
  m.attr("DEFAULT_RHO") = kDefaultRho;

  py::class_<CostMatrix>(m, "CostMatrix")
      .def(py::init(&make_cost), py::arg("detected"), py::arg("misdetect"))
      .def_property_readonly("num_tracks", &CostMatrix::num_tracks)
      .def_property_readonly("num_measurements", &CostMatrix::num_measurements)
      .def_property_readonly("num_columns", &CostMatrix::num_columns)
      .def("at", &CostMatrix::at, py::arg("row"), py::arg("col"))
      .def("full", &CostMatrix::full)
      .def("finite_count", &CostMatrix::finite_count)
      .def("__eq__", [](const CostMatrix& a, const CostMatrix& b) { return a == b; })
      .def("__repr__", [](const CostMatrix& c) {
        return "<CostMatrix tracks=" + std::to_string(c.num_tracks()) +
               " measurements=" + std::to_string(c.num_measurements()) + ">";
      });

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("columns", &Assignment::columns)
      .def_readonly("cost", &Assignment::cost)
      .def("__eq__", [](const Assignment& a, const Assignment& b) { return a == b; })
      .def("__repr__", [](const Assignment& a) {
        std::string s = "<Assignment [";
        for (std::size_t i = 0; i < a.columns.size(); ++i) s += (i ? ", " : "") + std::to_string(a.columns[i]);
        return s + "] cost=" + std::to_string(a.cost) + ">";
      });

  py::class_<RankedSolution>(m, "RankedSolution")
      .def_readonly("assignments", &RankedSolution::assignments)
      .def_readonly("requested_k", &RankedSolution::requested_k)
      .def("costs", &RankedSolution::costs)
      .def("columns", [](const RankedSolution& s) {
        std::vector<Columns> out;
        for (const auto& a : s.assignments) out.push_back(a.columns);
        return out;
      })
      .def("__len__", &RankedSolution::size)
      .def("__getitem__", [](const RankedSolution& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return s[i];
      });

  m.def("assignment_cost", [](const CostMatrix& c, const Columns& cols) { return assignment_cost(c, cols); },
        py::arg("cost"), py::arg("columns"));
  m.def("is_valid_assignment", [](const CostMatrix& c, const Columns& cols) { return is_valid_assignment(c, cols); },
        py::arg("cost"), py::arg("columns"));
  m.def("enumerate_assignments", &enumerate_assignments, py::arg("cost"), py::arg("k"),
        py::arg("limit") = kDefaultOracleLimit);
  m.def(
      "solve_linear",
      [](const CostMatrix& c, const std::vector<std::pair<int, int>>& forced,
         const std::vector<std::pair<int, int>>& excluded) { return solve_linear(c, cells(forced), cells(excluded)); },
      py::arg("cost"), py::arg("forced") = std::vector<std::pair<int, int>>{},
      py::arg("excluded") = std::vector<std::pair<int, int>>{});
  m.def("murty_k_best", &murty_k_best, py::arg("cost"), py::arg("k"), py::call_guard<py::gil_scoped_release>());

  m.def("default_gibbs_iterations", &default_gibbs_iterations, py::arg("cost"));
  m.def(
      "gibbs_sample",
      [](const CostMatrix& c, std::size_t k, std::optional<std::size_t> iterations, std::uint64_t seed) {
        GibbsConfig cfg;
        cfg.k = k;
        cfg.seed = seed;
        cfg.iterations = iterations ? *iterations : default_gibbs_iterations(c);
        py::gil_scoped_release release;
        return gibbs_sample(c, cfg);
      },
      py::arg("cost"), py::arg("k"), py::arg("iterations") = std::nullopt, py::arg("seed") = 0);

  py::class_<BipartiteGraph>(m, "BipartiteGraph")
      .def_readonly("num_source", &BipartiteGraph::num_source)
      .def_readonly("num_target", &BipartiteGraph::num_target)
      .def_readonly("source_features", &BipartiteGraph::source_features)
      .def_readonly("target_features", &BipartiteGraph::target_features)
      .def_property_readonly("edges",
                             [](const BipartiteGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& e : g.edges) out.emplace_back(e.source, e.target);
                               return out;
                             })
      .def_readonly("edge_attrs", &BipartiteGraph::edge_attrs)
      .def_property_readonly("num_edges", &BipartiteGraph::num_edges)
      .def("edge_index", &BipartiteGraph::edge_index, py::arg("source"), py::arg("target"));

  m.def("line_features", [](const std::vector<double>& values, std::size_t length) { return line_features(values, length); },
        py::arg("values"), py::arg("length"));
  m.def("to_bipartite", &to_bipartite, py::arg("cost"));
  m.def("normalize_graph", &normalize_graph, py::arg("graph"));

  py::class_<PredictionMatrix>(m, "PredictionMatrix")
      .def(py::init(&PredictionMatrix::create), py::arg("values"), py::arg("graph"))
      .def_static("one_hot", &PredictionMatrix::one_hot, py::arg("graph"), py::arg("solution"), py::arg("k_max"))
      .def_property_readonly("k_max", &PredictionMatrix::k_max)
      .def_property_readonly("num_edges", &PredictionMatrix::num_edges)
      .def_property_readonly("values", &PredictionMatrix::values);

  m.def(
      "greedy_candidates",
      [](const std::vector<std::vector<double>>& scores, double theta) {
        return greedy_candidates(make_dense(scores), theta);
      },
      py::arg("scores"), py::arg("theta") = kDefaultTheta);
  m.def(
      "greedy_post_process",
      [](const PredictionMatrix& p, const CostMatrix& c, double theta, std::size_t jobs) {
        return greedy_post_process(p, c, {theta, jobs});
      },
      py::arg("predictions"), py::arg("cost"), py::arg("theta") = kDefaultTheta, py::arg("jobs") = 1,
      py::call_guard<py::gil_scoped_release>());

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("per_rank_accuracy", &EvalReport::per_rank_accuracy)
      .def_readonly("mean_cost", &EvalReport::mean_cost)
      .def_readonly("wp", &EvalReport::wp)
      .def_readonly("k", &EvalReport::k)
      .def_readonly("rho", &EvalReport::rho);

  m.def("kappa", &kappa, py::arg("pred"), py::arg("opt"), py::arg("i"), py::arg("k"), py::arg("rho") = kDefaultRho);
  m.def("rank_weight", &rank_weight, py::arg("i"), py::arg("k"));
  m.def("wp_score", &wp_score, py::arg("pred"), py::arg("opt"), py::arg("k"), py::arg("rho") = kDefaultRho);
  m.def("rank_accuracy", &rank_accuracy, py::arg("pred"), py::arg("opt"), py::arg("k"));
  m.def("penalized_mean_cost", &penalized_mean_cost, py::arg("pred"), py::arg("opt"), py::arg("k"));
  m.def("evaluate", &evaluate, py::arg("pred"), py::arg("opt"), py::arg("k"), py::arg("rho") = kDefaultRho);

  m.def(
      "generate_instance",
      [](std::size_t nu_s, double vartheta, std::uint64_t seed, double k_mean) {
        GenConfig cfg;
        cfg.nu_s = nu_s;
        cfg.vartheta = vartheta;
        cfg.seed = seed;
        cfg.k_mean = k_mean;
        auto g = generate_instance(cfg);
        return std::make_pair(std::move(g.cost), g.requested_k);
      },
      py::arg("nu_s"), py::arg("vartheta"), py::arg("seed") = 0, py::arg("k_mean") = 4.0);
  m.def("instance_id", &instance_id, py::arg("nu_s"), py::arg("vartheta_step"), py::arg("index"));

  m.def("instance_to_json", [](const CostMatrix& c, const std::vector<Columns>& labels) {
    return io::instance_to_json(c, labels).dump();
  }, py::arg("cost"), py::arg("labels") = std::vector<Columns>{});
  m.def("instance_from_json", [](const std::string& text) {
    auto inst = io::instance_from_json(io::Json::parse(text));
    return std::make_pair(std::move(inst.cost), std::move(inst.labels));
  }, py::arg("text"));
  m.def("graph_to_json", [](const BipartiteGraph& g, const std::string& id, const std::vector<Columns>& labels,
                            std::size_t k_max) { return io::graph_to_json(g, id, labels, k_max).dump(); },
        py::arg("graph"), py::arg("id") = "", py::arg("labels") = std::vector<Columns>{}, py::arg("k_max") = 0);
  m.def("load_prediction", [](const std::filesystem::path& path, const CostMatrix& c) {
    return PredictionMatrix::create(io::prediction_from_json(io::read_json(path)).values, to_bipartite(c));
  }, py::arg("path"), py::arg("cost"));
  m.def("load_dataset", [](const std::filesystem::path& dir) {
    py::list out;
    for (auto& e : io::load_dataset(dir)) {
      py::dict d;
      d["id"] = e.id;
      d["nu_s"] = e.nu_s;
      d["vartheta"] = e.vartheta;
      d["requested_k"] = e.requested_k;
      d["cost"] = std::move(e.cost);
      d["labels"] = e.labels;
      out.append(std::move(d));
    }
    return out;
  }, py::arg("directory"));
}
