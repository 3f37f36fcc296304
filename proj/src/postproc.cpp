#include "rankassign/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankassign/parallel.hpp"

namespace rankassign {

std::vector<std::vector<double>> DenseScores::nested() const {
  std::vector<std::vector<double>> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    out[r].assign(data.begin() + static_cast<long>(r * cols),
                  data.begin() + static_cast<long>((r + 1) * cols));
  }
  return out;
}

PredictionMatrix PredictionMatrix::create(std::vector<std::vector<double>> values,
                                          BipartiteGraph graph) {
  if (values.size() != graph.num_edges()) {
    throw Error(ErrorCode::ShapeMismatch, "prediction has " + std::to_string(values.size()) +
                                              " rows but graph has " +
                                              std::to_string(graph.num_edges()) + " edges");
  }
  if (values.empty()) throw Error(ErrorCode::ShapeMismatch, "prediction matrix has no rows");
  const std::size_t k_max = values.front().size();
  if (k_max == 0) throw Error(ErrorCode::ShapeMismatch, "prediction matrix has no columns");
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != k_max) {
      throw Error(ErrorCode::ShapeMismatch, "prediction row " + std::to_string(r) + " has " +
                                                std::to_string(values[r].size()) + " columns");
    }
    for (double v : values[r]) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::InvalidEntry,
                    "prediction value outside [0, 1] in row " + std::to_string(r));
      }
    }
  }
  return PredictionMatrix(std::move(values), std::move(graph), k_max);
}

PredictionMatrix PredictionMatrix::one_hot(const BipartiteGraph& graph,
                                           const RankedSolution& solution, std::size_t k_max) {
  if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be positive");
  std::vector<std::vector<double>> values(graph.num_edges(), std::vector<double>(k_max, 0.0));
  for (std::size_t s = 0; s < std::min(k_max, solution.size()); ++s) {
    const auto& cols = solution[s].columns;
    for (std::size_t row = 0; row < cols.size(); ++row) {
      const long e = graph.edge_index(static_cast<int>(row), cols[row]);
      if (e < 0) throw Error(ErrorCode::InfiniteEntry, "solution uses a gated cell");
      values[static_cast<std::size_t>(e)][s] = 1.0;
    }
  }
  return PredictionMatrix(std::move(values), graph, k_max);
}

DenseScores column_to_dense(const PredictionMatrix& pred, std::size_t i) {
  if (i >= pred.k_max()) throw Error(ErrorCode::InvalidArgument, "prediction column out of range");
  const auto& g = pred.graph();
  DenseScores dense(g.num_source, g.num_target);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    dense.at(g.edges[e].source, g.edges[e].target) = pred.value(e, i);
  }
  return dense;
}

Columns row_argmax(const DenseScores& scores) {
  Columns out(scores.rows, 0);
  for (std::size_t r = 0; r < scores.rows; ++r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.cols; ++c) {
      if (scores.at(r, c) > scores.at(r, best)) best = c;
    }
    out[r] = static_cast<int>(best);
  }
  return out;
}

std::vector<Columns> greedy_candidates(DenseScores scores, double theta) {
  std::vector<Columns> found;
  found.push_back(row_argmax(scores));

  auto above = [&](std::size_t r) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < scores.cols; ++c) n += scores.at(r, c) >= theta ? 1 : 0;
    return n;
  };

  for (;;) {
    std::size_t row = 0, most = 0;
    for (std::size_t r = 0; r < scores.rows; ++r) {
      const std::size_t n = above(r);
      if (n > most) {
        most = n;
        row = r;
      }
    }
    if (most < 2) break;
    // The row maximum is >= theta here, so each pass removes one such entry.
    const Columns current = row_argmax(scores);
    scores.at(row, static_cast<std::size_t>(current[row])) = 0.0;
    found.push_back(row_argmax(scores));
  }
  return found;
}

namespace {

std::vector<Assignment> valid_candidates(const PredictionMatrix& pred, const CostMatrix& c,
                                         std::size_t column, double theta) {
  std::vector<Assignment> out;
  for (auto& cols : greedy_candidates(column_to_dense(pred, column), theta)) {
    if (!is_valid_assignment(c, cols)) continue;
    const double cost = assignment_cost(c, cols);
    out.push_back({std::move(cols), cost});
  }
  return out;
}

void check_pairing(const PredictionMatrix& pred, const CostMatrix& c) {
  const auto& g = pred.graph();
  if (g.num_source != c.num_tracks() || g.num_target != c.num_columns() ||
      g.num_edges() != c.finite_count()) {
    throw Error(ErrorCode::ShapeMismatch, "prediction graph does not match the cost matrix");
  }
  for (const auto& e : g.edges) {
    if (!c.finite(e.source, e.target)) {
      throw Error(ErrorCode::ShapeMismatch, "prediction graph has an edge on a gated cell");
    }
  }
}

}  // namespace

RankedSolution greedy_post_process(const PredictionMatrix& pred, const CostMatrix& c,
                                   const PostProcessOptions& options) {
  if (!(options.theta > 0.0 && options.theta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, 1)");
  }
  check_pairing(pred, c);

  const std::size_t k_max = pred.k_max();
  std::vector<std::vector<Assignment>> per_column(k_max);
  parallel_for(k_max, options.jobs, [&](std::size_t i) {
    per_column[i] = valid_candidates(pred, c, i, options.theta);
  });

  std::vector<Assignment> pool;
  for (auto& part : per_column) {
    pool.insert(pool.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  rank_and_truncate(pool, k_max);

  RankedSolution out;
  out.requested_k = k_max;
  out.assignments = std::move(pool);
  return out;
}

}  // namespace rankassign
