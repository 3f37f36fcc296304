#include "rankassign/cost_model.hpp"

#include <algorithm>
#include <string>

namespace rankassign {

namespace {

std::string shape_message(const char* what, std::size_t got, std::size_t want) {
  return std::string(what) + ": expected " + std::to_string(want) + ", got " + std::to_string(got);
}

}  // namespace

CostMatrix CostMatrix::create(std::size_t num_tracks, std::size_t num_measurements,
                              const std::vector<std::vector<double>>& detected,
                              const std::vector<double>& misdetect) {
  if (num_tracks == 0) {
    throw Error(ErrorCode::ShapeMismatch, "num_tracks must be positive");
  }
  if (detected.size() != num_tracks) {
    throw Error(ErrorCode::ShapeMismatch, shape_message("detected rows", detected.size(), num_tracks));
  }
  if (misdetect.size() != num_tracks) {
    throw Error(ErrorCode::ShapeMismatch, shape_message("misdetect length", misdetect.size(), num_tracks));
  }
  for (std::size_t i = 0; i < num_tracks; ++i) {
    if (detected[i].size() != num_measurements) {
      throw Error(ErrorCode::ShapeMismatch,
                  shape_message(("detected row " + std::to_string(i)).c_str(), detected[i].size(),
                                num_measurements));
    }
  }

  const std::size_t cols = num_measurements + num_tracks;
  std::vector<double> data(num_tracks * cols, kInf);
  for (std::size_t i = 0; i < num_tracks; ++i) {
    for (std::size_t j = 0; j < num_measurements; ++j) {
      const double v = detected[i][j];
      if (std::isnan(v)) {
        throw Error(ErrorCode::InvalidEntry, "NaN in detected block at (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ")");
      }
      // -inf would make every assignment through it unboundedly good.
      if (std::isinf(v) && v < 0) {
        throw Error(ErrorCode::InvalidEntry, "-inf in detected block at (" + std::to_string(i) +
                                                 ", " + std::to_string(j) + ")");
      }
      data[i * cols + j] = v;
    }
    const double c = misdetect[i];
    if (std::isnan(c)) {
      throw Error(ErrorCode::InvalidEntry, "NaN misdetection cost for track " + std::to_string(i));
    }
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::NonFiniteMisdetect,
                  "misdetection cost for track " + std::to_string(i) + " is not finite");
    }
    data[i * cols + num_measurements + i] = c;
  }
  return CostMatrix(num_tracks, num_measurements, std::move(data));
}

CostMatrix validate_cost_matrix(std::size_t num_tracks, std::size_t num_measurements,
                                const std::vector<std::vector<double>>& detected,
                                const std::vector<double>& misdetect) {
  return CostMatrix::create(num_tracks, num_measurements, detected, misdetect);
}

std::vector<std::vector<double>> CostMatrix::full() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

std::size_t CostMatrix::finite_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); }));
}

std::vector<double> RankedSolution::costs() const {
  std::vector<double> out;
  out.reserve(assignments.size());
  for (const auto& a : assignments) out.push_back(a.cost);
  return out;
}

double assignment_cost(const CostMatrix& c, std::span<const int> columns) {
  if (columns.size() != c.num_tracks()) {
    throw Error(ErrorCode::ShapeMismatch,
                shape_message("assignment length", columns.size(), c.num_tracks()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int col = columns[i];
    if (col < 0 || static_cast<std::size_t>(col) >= c.num_columns()) {
      throw Error(ErrorCode::ShapeMismatch, "column index out of range in row " + std::to_string(i));
    }
    const double v = c.at(i, static_cast<std::size_t>(col));
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InfiniteEntry, "row " + std::to_string(i) + " references gated column " +
                                                std::to_string(col));
    }
    total += v;
  }
  return total;
}

bool is_valid_assignment(const CostMatrix& c, std::span<const int> columns) noexcept {
  if (columns.size() != c.num_tracks()) return false;
  std::vector<char> used(c.num_columns(), 0);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int col = columns[i];
    if (col < 0 || static_cast<std::size_t>(col) >= c.num_columns()) return false;
    if (used[col]) return false;
    used[col] = 1;
    if (!c.finite(i, static_cast<std::size_t>(col))) return false;
  }
  return true;
}

Columns all_misdetected(const CostMatrix& c) {
  Columns out(c.num_tracks());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(c.misdetect_column(i));
  return out;
}

bool check_ranked_solution(const CostMatrix& c, const RankedSolution& s) {
  if (s.size() > s.requested_k) return false;
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto& a = s[r];
    if (!is_valid_assignment(c, a.columns)) return false;
    if (std::abs(assignment_cost(c, a.columns) - a.cost) > kCostTolerance) return false;
    if (r > 0 && a.cost < s[r - 1].cost - kCostTolerance) return false;
    for (std::size_t q = 0; q < r; ++q) {
      if (s[q].columns == a.columns) return false;
    }
  }
  return true;
}

void rank_and_truncate(std::vector<Assignment>& pool, std::size_t k) {
  std::sort(pool.begin(), pool.end(), ranked_before);
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  // Equal column vectors have equal cost, so after sorting duplicates are adjacent.
  if (pool.size() > k) pool.resize(k);
}

RankedSolution enumerate_assignments(const CostMatrix& c, std::size_t k, std::size_t oracle_limit) {
  if (c.num_tracks() > oracle_limit) {
    throw Error(ErrorCode::OracleLimitExceeded, "enumeration oracle limited to " +
                                                    std::to_string(oracle_limit) + " tracks, got " +
                                                    std::to_string(c.num_tracks()));
  }
  const std::size_t n = c.num_tracks();
  const std::size_t m = c.num_columns();
  std::vector<Assignment> all;
  Columns current(n, -1);
  std::vector<char> used(m, 0);

  // Depth-first over rows; the partial sum is accumulated in row order so the
  // stored cost matches assignment_cost bit for bit.
  auto recurse = [&](auto&& self, std::size_t row, double partial) -> void {
    if (row == n) {
      all.push_back({current, partial});
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j] || !c.finite(row, j)) continue;
      used[j] = 1;
      current[row] = static_cast<int>(j);
      self(self, row + 1, partial + c.at(row, j));
      used[j] = 0;
    }
  };
  recurse(recurse, 0, 0.0);

  RankedSolution out;
  out.requested_k = k;
  rank_and_truncate(all, k);
  out.assignments = std::move(all);
  return out;
}

}  // namespace rankassign
