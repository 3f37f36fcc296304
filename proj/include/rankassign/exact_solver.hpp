#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rankassign/cost_model.hpp"

namespace rankassign {

struct CellPair {
  int row = 0;
  int col = 0;
  bool operator==(const CellPair&) const = default;
};

/// One node of Murty's partition: the solution space restricted by pairs that
/// must appear (`forced`) and pairs that must not (`excluded`).
struct MurtySubproblem {
  std::vector<CellPair> forced;
  std::vector<CellPair> excluded;
  Assignment best;
};

/// Minimum-cost valid assignment subject to the constraints, or nullopt when
/// no valid assignment satisfies them. Among optimal assignments the
/// lexicographically smallest column vector is returned. The reported cost
/// is recomputed with assignment_cost so it matches the enumeration oracle.
[[nodiscard]] std::optional<Assignment> solve_linear(const CostMatrix& c,
                                                     const std::vector<CellPair>& forced = {},
                                                     const std::vector<CellPair>& excluded = {});

/// The k cheapest valid assignments in (cost, column vector) order. Returns
/// fewer than k when fewer valid assignments exist.
[[nodiscard]] RankedSolution murty_k_best(const CostMatrix& c, std::size_t k);

namespace detail {

/// Dense rectangular assignment problem (rows <= cols), +inf marks forbidden
/// cells. Row potentials `u` and column potentials `v` satisfy
/// cost(i,j) - u[i] - v[j] >= 0 with equality on the matching, v <= 0, and
/// v == 0 on unmatched columns.
struct LapResult {
  std::vector<int> row_to_col;
  std::vector<double> u;
  std::vector<double> v;
};

[[nodiscard]] std::optional<LapResult> solve_dense(const std::vector<double>& cost,
                                                   std::size_t rows, std::size_t cols);

/// Replaces `result.row_to_col` with the lexicographically smallest optimal
/// matching, using the tight-edge graph defined by the potentials.
void lexicographic_refine(const std::vector<double>& cost, std::size_t rows, std::size_t cols,
                          LapResult& result);

}  // namespace detail

}  // namespace rankassign
