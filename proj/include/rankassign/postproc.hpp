#pragma once

#include <cstddef>
#include <vector>

#include "rankassign/cost_model.hpp"
#include "rankassign/graph.hpp"

namespace rankassign {

/// Row-major dense matrix of soft scores, source nodes by target nodes.
struct DenseScores {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseScores() = default;
  DenseScores(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  [[nodiscard]] double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  [[nodiscard]] std::vector<std::vector<double>> nested() const;
};

/// Soft edge scores, one column per predicted solution. Row r scores
/// graph.edges[r].
class PredictionMatrix {
 public:
  /// `values` is |E| rows of k_max scores each, all in [0, 1].
  static PredictionMatrix create(std::vector<std::vector<double>> values, BipartiteGraph graph);

  /// Exact edge indicators of a ranked solution; columns past the end of the
  /// solution are all zero.
  static PredictionMatrix one_hot(const BipartiteGraph& graph, const RankedSolution& solution,
                                  std::size_t k_max);

  [[nodiscard]] std::size_t k_max() const noexcept { return k_max_; }
  [[nodiscard]] std::size_t num_edges() const noexcept { return values_.size(); }
  [[nodiscard]] const BipartiteGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] const std::vector<std::vector<double>>& values() const noexcept { return values_; }
  [[nodiscard]] double value(std::size_t edge, std::size_t column) const { return values_[edge][column]; }

 private:
  PredictionMatrix(std::vector<std::vector<double>> values, BipartiteGraph graph, std::size_t k_max)
      : values_(std::move(values)), graph_(std::move(graph)), k_max_(k_max) {}

  std::vector<std::vector<double>> values_;
  BipartiteGraph graph_;
  std::size_t k_max_ = 0;
};

inline constexpr double kDefaultTheta = 0.5;

/// Scatters prediction column `i` onto a dense source x target matrix; cells
/// without an edge are 0.
[[nodiscard]] DenseScores column_to_dense(const PredictionMatrix& pred, std::size_t i);

/// Per-row argmax, lowest column on ties.
[[nodiscard]] Columns row_argmax(const DenseScores& scores);

/// Candidate column vectors from one dense prediction: the raw row argmax,
/// then one extra argmax each time the row holding the most entries
/// >= theta (lowest row on ties) has its current maximum zeroed, until no row
/// holds two such entries. Validity is not checked here.
[[nodiscard]] std::vector<Columns> greedy_candidates(DenseScores scores, double theta);

struct PostProcessOptions {
  double theta = kDefaultTheta;
  std::size_t jobs = 1;  ///< worker threads over prediction columns
};

/// Valid candidates of every prediction column, deduplicated, ranked by cost
/// and truncated to k_max. May be empty.
[[nodiscard]] RankedSolution greedy_post_process(const PredictionMatrix& pred, const CostMatrix& c,
                                                 const PostProcessOptions& options = {});

}  // namespace rankassign
