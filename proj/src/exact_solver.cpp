#include "rankassign/exact_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

namespace rankassign {

namespace detail {

// Shortest augmenting path with row/column potentials (Kuhn-Munkres in the
// Jonker-Volgenant formulation). Index 0 of p/way/v is the virtual column used
// to seed each Dijkstra phase.
std::optional<LapResult> solve_dense(const std::vector<double>& cost, std::size_t rows,
                                     std::size_t cols) {
  LapResult out;
  out.row_to_col.assign(rows, -1);
  out.u.assign(rows, 0.0);
  out.v.assign(cols, 0.0);
  if (rows == 0) return out;
  if (rows > cols) return std::nullopt;

  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> p(cols + 1, 0), way(cols + 1, 0);
  std::vector<double> minv(cols + 1);
  std::vector<char> used(cols + 1);

  for (std::size_t i = 1; i <= rows; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      const double* row = cost.data() + (i0 - 1) * cols;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double a = row[j - 1];
        if (std::isfinite(a)) {
          const double cur = a - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!std::isfinite(delta)) return std::nullopt;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= cols; ++j) {
    if (p[j] != 0) out.row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  for (std::size_t i = 0; i < rows; ++i) out.u[i] = u[i + 1];
  for (std::size_t j = 0; j < cols; ++j) out.v[j] = v[j + 1];
  return out;
}

namespace {

// Bipartite matching helper restricted to "alive" rows and columns.
class TightGraph {
 public:
  TightGraph(std::size_t rows, std::size_t cols) : adj_(rows), cols_(cols) {}

  void add(std::size_t r, std::size_t c) { adj_[r].push_back(static_cast<int>(c)); }
  [[nodiscard]] const std::vector<int>& neighbours(std::size_t r) const { return adj_[r]; }
  [[nodiscard]] std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adj_) n += a.size();
    return n;
  }

  // True when the rows in [first_row, rows) can all be matched into columns
  // not marked taken.
  [[nodiscard]] bool rows_matchable(std::size_t first_row, const std::vector<char>& taken) const {
    std::vector<int> col_owner(cols_, -1);
    for (std::size_t r = first_row; r < adj_.size(); ++r) {
      std::vector<char> seen(cols_, 0);
      if (!augment_row(r, taken, col_owner, seen)) return false;
    }
    return true;
  }

  // True when every required, untaken column can be matched to a distinct row
  // in [first_row, rows).
  [[nodiscard]] bool required_matchable(std::size_t first_row, const std::vector<char>& taken,
                                        const std::vector<char>& required) const {
    std::vector<std::vector<int>> col_adj(cols_);
    for (std::size_t r = first_row; r < adj_.size(); ++r) {
      for (int c : adj_[r]) col_adj[c].push_back(static_cast<int>(r));
    }
    std::vector<int> row_owner(adj_.size(), -1);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!required[c] || taken[c]) continue;
      std::vector<char> seen(adj_.size(), 0);
      if (!augment_col(c, col_adj, row_owner, seen)) return false;
    }
    return true;
  }

 private:
  bool augment_row(std::size_t r, const std::vector<char>& taken, std::vector<int>& col_owner,
                   std::vector<char>& seen) const {
    for (int c : adj_[r]) {
      if (taken[c] || seen[c]) continue;
      seen[c] = 1;
      if (col_owner[c] < 0 ||
          augment_row(static_cast<std::size_t>(col_owner[c]), taken, col_owner, seen)) {
        col_owner[c] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  }

  static bool augment_col(std::size_t c, const std::vector<std::vector<int>>& col_adj,
                          std::vector<int>& row_owner, std::vector<char>& seen) {
    for (int r : col_adj[c]) {
      if (seen[r]) continue;
      seen[r] = 1;
      if (row_owner[r] < 0 ||
          augment_col(static_cast<std::size_t>(row_owner[r]), col_adj, row_owner, seen)) {
        row_owner[r] = static_cast<int>(c);
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::size_t cols_;
};

}  // namespace

// By complementary slackness, an assignment is optimal iff it uses only
// tight cells and covers every column with a strictly negative potential.
// Matchings with both properties exist iff each property is separately
// satisfiable (Mendelsohn-Dulmage), which gives a cheap feasibility test for
// greedy row-by-row lexicographic selection.
void lexicographic_refine(const std::vector<double>& cost, std::size_t rows, std::size_t cols,
                          LapResult& result) {
  if (rows == 0) return;
  double scale = 1.0;
  for (double a : cost) {
    if (std::isfinite(a)) scale = std::max(scale, std::abs(a));
  }
  const double tol = 1e-9 * scale;

  TightGraph graph(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double a = cost[i * cols + j];
      if (std::isfinite(a) && a - result.u[i] - result.v[j] <= tol) graph.add(i, j);
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (std::find(graph.neighbours(i).begin(), graph.neighbours(i).end(), result.row_to_col[i]) ==
        graph.neighbours(i).end()) {
      return;  // numerically inconsistent potentials; keep the solver's answer
    }
  }
  if (graph.edge_count() == rows) return;  // optimum is unique

  std::vector<char> required(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) required[j] = result.v[j] < -tol ? 1 : 0;

  std::vector<char> taken(cols, 0);
  std::vector<int> chosen(rows, -1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int c : graph.neighbours(i)) {  // ascending column order
      if (taken[c]) continue;
      taken[c] = 1;
      if (graph.rows_matchable(i + 1, taken) && graph.required_matchable(i + 1, taken, required)) {
        chosen[i] = c;
        break;
      }
      taken[c] = 0;
    }
    if (chosen[i] < 0) return;
  }
  result.row_to_col = std::move(chosen);
}

}  // namespace detail

std::optional<Assignment> solve_linear(const CostMatrix& c, const std::vector<CellPair>& forced,
                                       const std::vector<CellPair>& excluded) {
  const std::size_t n = c.num_tracks();
  const std::size_t m = c.num_columns();

  Columns columns(n, -1);
  std::vector<char> col_taken(m, 0);
  for (const auto& f : forced) {
    if (f.row < 0 || f.col < 0 || static_cast<std::size_t>(f.row) >= n ||
        static_cast<std::size_t>(f.col) >= m) {
      return std::nullopt;
    }
    if (columns[f.row] >= 0 || col_taken[f.col]) return std::nullopt;
    if (!c.finite(f.row, f.col)) return std::nullopt;
    if (std::find(excluded.begin(), excluded.end(), f) != excluded.end()) return std::nullopt;
    columns[f.row] = f.col;
    col_taken[f.col] = 1;
  }

  // Reduced problem over the unforced rows and untaken columns, both kept in
  // ascending order so lexicographic order carries over to the full vector.
  std::vector<int> free_rows, free_cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (columns[i] < 0) free_rows.push_back(static_cast<int>(i));
  }
  std::vector<int> col_index(m, -1);
  for (std::size_t j = 0; j < m; ++j) {
    if (!col_taken[j]) {
      col_index[j] = static_cast<int>(free_cols.size());
      free_cols.push_back(static_cast<int>(j));
    }
  }
  std::vector<int> row_index(n, -1);
  for (std::size_t r = 0; r < free_rows.size(); ++r) row_index[free_rows[r]] = static_cast<int>(r);

  const std::size_t rows = free_rows.size();
  const std::size_t cols = free_cols.size();
  std::vector<double> reduced(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t q = 0; q < cols; ++q) reduced[r * cols + q] = c.at(free_rows[r], free_cols[q]);
  }
  for (const auto& x : excluded) {
    if (x.row < 0 || x.col < 0 || static_cast<std::size_t>(x.row) >= n ||
        static_cast<std::size_t>(x.col) >= m) {
      continue;
    }
    const int r = row_index[x.row];
    const int q = col_index[x.col];
    if (r >= 0 && q >= 0) reduced[static_cast<std::size_t>(r) * cols + q] = kInf;
  }

  auto lap = detail::solve_dense(reduced, rows, cols);
  if (!lap) return std::nullopt;
  detail::lexicographic_refine(reduced, rows, cols, *lap);
  for (std::size_t r = 0; r < rows; ++r) columns[free_rows[r]] = free_cols[lap->row_to_col[r]];

  Assignment out;
  out.cost = assignment_cost(c, columns);
  out.columns = std::move(columns);
  return out;
}

namespace {

struct QueueEntry {
  MurtySubproblem node;
  std::uint64_t order = 0;
};

struct QueueAfter {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (ranked_before(a.node.best, b.node.best)) return false;
    if (ranked_before(b.node.best, a.node.best)) return true;
    return a.order > b.order;
  }
};

}  // namespace

RankedSolution murty_k_best(const CostMatrix& c, std::size_t k) {
  RankedSolution out;
  out.requested_k = k;
  if (k == 0) return out;

  auto first = solve_linear(c);
  if (!first) return out;  // unreachable for a valid CostMatrix

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueAfter> queue;
  std::uint64_t counter = 0;
  queue.push({MurtySubproblem{{}, {}, std::move(*first)}, counter++});

  const std::size_t n = c.num_tracks();
  std::vector<char> is_forced(n);
  while (!queue.empty() && out.size() < k) {
    MurtySubproblem node = queue.top().node;
    queue.pop();
    out.assignments.push_back(node.best);
    if (out.size() == k) break;

    std::fill(is_forced.begin(), is_forced.end(), 0);
    for (const auto& f : node.forced) is_forced[f.row] = 1;

    // Standard partition: child t forces the parent's choice on the free rows
    // before t and excludes it on row t.
    std::vector<CellPair> forced = node.forced;
    for (std::size_t row = 0; row < n; ++row) {
      if (is_forced[row]) continue;
      const CellPair pick{static_cast<int>(row), node.best.columns[row]};
      std::vector<CellPair> excluded = node.excluded;
      excluded.push_back(pick);
      if (auto sol = solve_linear(c, forced, excluded)) {
        queue.push({MurtySubproblem{forced, std::move(excluded), std::move(*sol)}, counter++});
      }
      forced.push_back(pick);
    }
  }
  return out;
}

}  // namespace rankassign
