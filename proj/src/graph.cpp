#include "rankassign/graph.hpp"

#include <algorithm>
#include <cmath>

namespace rankassign {

long BipartiteGraph::edge_index(int source, int target) const {
  const Edge key{source, target};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<long>(it - edges.begin());
}

NodeFeatures line_features(std::span<const double> values, std::size_t line_length) {
  NodeFeatures f{};
  std::size_t finite = 0;
  double lo = kInf, hi = -kInf, sum = 0.0, sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    ++finite;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    sq += v * v;
  }
  if (finite == 0 || line_length == 0) return f;
  f[0] = static_cast<double>(finite) / static_cast<double>(line_length);
  f[1] = lo;
  f[2] = hi;
  f[3] = sum / static_cast<double>(finite);
  f[4] = std::sqrt(sq);
  return f;
}

BipartiteGraph to_bipartite(const CostMatrix& c) {
  BipartiteGraph g;
  g.num_source = c.num_tracks();
  g.num_target = c.num_columns();
  g.source_features.reserve(g.num_source);
  g.target_features.reserve(g.num_target);

  for (std::size_t i = 0; i < g.num_source; ++i) {
    g.source_features.push_back(line_features(c.row(i), g.num_target));
  }
  std::vector<double> column(g.num_source);
  for (std::size_t j = 0; j < g.num_target; ++j) {
    for (std::size_t i = 0; i < g.num_source; ++i) column[i] = c.at(i, j);
    g.target_features.push_back(line_features(column, g.num_source));
  }

  g.edges.reserve(c.finite_count());
  g.edge_attrs.reserve(c.finite_count());
  for (std::size_t i = 0; i < g.num_source; ++i) {
    for (std::size_t j = 0; j < g.num_target; ++j) {
      if (!c.finite(i, j)) continue;
      g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
      g.edge_attrs.push_back(c.at(i, j));
    }
  }
  return g;
}

namespace {

void min_max_scale(std::vector<double*>& values) {
  if (values.empty()) return;
  double lo = kInf, hi = -kInf;
  for (const double* v : values) {
    lo = std::min(lo, *v);
    hi = std::max(hi, *v);
  }
  const double range = hi - lo;
  for (double* v : values) *v = range > 0.0 ? (*v - lo) / range : 0.0;
}

}  // namespace

BipartiteGraph normalize_graph(const BipartiteGraph& g) {
  BipartiteGraph out = g;
  std::vector<double*> column;
  for (std::size_t d = 0; d < kNodeFeatureDim; ++d) {
    column.clear();
    for (auto& f : out.source_features) column.push_back(&f[d]);
    for (auto& f : out.target_features) column.push_back(&f[d]);
    min_max_scale(column);
  }
  column.clear();
  for (auto& a : out.edge_attrs) column.push_back(&a);
  min_max_scale(column);
  return out;
}

}  // namespace rankassign
