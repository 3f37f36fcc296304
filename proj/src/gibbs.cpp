#include "rankassign/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rankassign/exact_solver.hpp"
#include "rankassign/rng.hpp"

namespace rankassign {

RankedSolution gibbs_sample(const CostMatrix& c, const GibbsConfig& cfg) {
  if (cfg.iterations == 0) throw Error(ErrorCode::InvalidArgument, "gibbs iterations must be >= 1");
  if (cfg.k == 0) throw Error(ErrorCode::InvalidArgument, "gibbs k must be >= 1");

  RankedSolution out;
  out.requested_k = cfg.k;

  auto start = solve_linear(c);
  if (!start) return out;

  const std::size_t n = c.num_tracks();
  const std::size_t m = c.num_columns();
  Engine rng(cfg.seed);

  Columns state = start->columns;
  std::vector<char> occupied(m, 0);
  for (int col : state) occupied[col] = 1;

  std::set<Columns> visited;
  visited.insert(state);

  std::vector<int> support;
  std::vector<double> weight;
  support.reserve(m);
  weight.reserve(m);

  for (std::size_t sweep = 0; sweep < cfg.iterations; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      occupied[state[i]] = 0;
      support.clear();
      weight.clear();
      double lowest = kInf;
      for (std::size_t j = 0; j < m; ++j) {
        if (occupied[j] || !c.finite(i, j)) continue;
        support.push_back(static_cast<int>(j));
        lowest = std::min(lowest, c.at(i, j));
      }
      // The row's own column is free again, so support is never empty.
      double total = 0.0;
      for (int j : support) {
        weight.push_back(std::exp(lowest - c.at(i, j)));
        total += weight.back();
      }
      double draw = uniform01(rng) * total;
      std::size_t pick = support.size() - 1;
      for (std::size_t s = 0; s < support.size(); ++s) {
        if (draw < weight[s]) {
          pick = s;
          break;
        }
        draw -= weight[s];
      }
      state[i] = support[pick];
      occupied[state[i]] = 1;
      visited.insert(state);
    }
  }

  std::vector<Assignment> pool;
  pool.reserve(visited.size());
  for (const auto& cols : visited) pool.push_back({cols, assignment_cost(c, cols)});
  rank_and_truncate(pool, cfg.k);
  out.assignments = std::move(pool);
  return out;
}

}  // namespace rankassign
