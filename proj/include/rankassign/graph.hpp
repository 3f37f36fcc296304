#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rankassign/cost_model.hpp"

namespace rankassign {

inline constexpr std::size_t kNodeFeatureDim = 5;
using NodeFeatures = std::array<double, kNodeFeatureDim>;

struct Edge {
  int source = 0;
  int target = 0;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

/// Tracks become source nodes, measurement and misdetection columns become
/// target nodes, and every finite cost becomes an edge carrying that cost.
/// Edges are stored in row-major (source, target) order; prediction rows are
/// bound to edges by this order.
struct BipartiteGraph {
  std::size_t num_source = 0;
  std::size_t num_target = 0;
  std::vector<NodeFeatures> source_features;
  std::vector<NodeFeatures> target_features;
  std::vector<Edge> edges;
  std::vector<double> edge_attrs;

  [[nodiscard]] std::size_t num_edges() const noexcept { return edges.size(); }

  /// Index of edge (source, target) or -1 when the pair is gated.
  [[nodiscard]] long edge_index(int source, int target) const;

  bool operator==(const BipartiteGraph&) const = default;
};

/// Node features of one row or column: fraction of finite entries, then min,
/// max, mean and l2-norm over the finite entries only. A line with no finite
/// entry maps to all zeros.
[[nodiscard]] NodeFeatures line_features(std::span<const double> values, std::size_t line_length);

[[nodiscard]] BipartiteGraph to_bipartite(const CostMatrix& c);

/// Per-graph min-max scaling to [0, 1]: each feature dimension jointly over
/// source and target nodes, and the edge attributes over all edges. Constant
/// dimensions map to 0.
[[nodiscard]] BipartiteGraph normalize_graph(const BipartiteGraph& g);

}  // namespace rankassign
