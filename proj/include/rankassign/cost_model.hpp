#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rankassign/error.hpp"

namespace rankassign {

/// Gated entries are +infinity. NaN is never a valid cost.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute tolerance used when invariant checks compare costs.
inline constexpr double kCostTolerance = 1e-9;

/// Column index per row; row i is assigned to column columns[i].
using Columns = std::vector<int>;

/// Association costs for |I| tracks against |Z| measurements.
///
/// The full matrix is |I| x (|Z| + |I|): the first |Z| columns hold the
/// (possibly gated) detection costs, column |Z| + i holds the misdetection
/// cost of track i and every other entry of the misdetection block is +inf.
/// Instances are immutable once built.
class CostMatrix {
 public:
  /// Builds and validates a matrix from its two blocks.
  /// `detected` is indexed [track][measurement].
  static CostMatrix create(std::size_t num_tracks, std::size_t num_measurements,
                           const std::vector<std::vector<double>>& detected,
                           const std::vector<double>& misdetect);

  [[nodiscard]] std::size_t num_tracks() const noexcept { return rows_; }
  [[nodiscard]] std::size_t num_measurements() const noexcept { return measurements_; }
  [[nodiscard]] std::size_t num_columns() const noexcept { return measurements_ + rows_; }

  [[nodiscard]] double at(std::size_t row, std::size_t col) const noexcept {
    return data_[row * num_columns() + col];
  }
  [[nodiscard]] bool finite(std::size_t row, std::size_t col) const noexcept {
    return std::isfinite(at(row, col));
  }
  [[nodiscard]] std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * num_columns(), num_columns()};
  }
  [[nodiscard]] double detected(std::size_t track, std::size_t meas) const noexcept {
    return at(track, meas);
  }
  [[nodiscard]] double misdetect(std::size_t track) const noexcept {
    return at(track, measurements_ + track);
  }
  [[nodiscard]] std::size_t misdetect_column(std::size_t track) const noexcept {
    return measurements_ + track;
  }

  /// Row-major copy of the full matrix.
  [[nodiscard]] std::vector<std::vector<double>> full() const;
  [[nodiscard]] std::size_t finite_count() const noexcept;

  bool operator==(const CostMatrix&) const = default;

 private:
  CostMatrix(std::size_t rows, std::size_t measurements, std::vector<double> data)
      : rows_(rows), measurements_(measurements), data_(std::move(data)) {}

  std::size_t rows_ = 0;
  std::size_t measurements_ = 0;
  std::vector<double> data_;
};

/// Same as CostMatrix::create; kept as a free function for symmetry with the
/// other operations.
[[nodiscard]] CostMatrix validate_cost_matrix(
    std::size_t num_tracks, std::size_t num_measurements,
    const std::vector<std::vector<double>>& detected,
    const std::vector<double>& misdetect);

struct Assignment {
  Columns columns;
  double cost = 0.0;

  /// Equality is on the column vector only.
  bool operator==(const Assignment& other) const { return columns == other.columns; }
};

/// Strict weak order used everywhere a ranking is produced: cost ascending,
/// then lexicographically smaller column vector first.
[[nodiscard]] inline bool ranked_before(const Assignment& a, const Assignment& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.columns < b.columns;
}

struct RankedSolution {
  std::vector<Assignment> assignments;
  std::size_t requested_k = 1;

  [[nodiscard]] std::size_t size() const noexcept { return assignments.size(); }
  [[nodiscard]] bool empty() const noexcept { return assignments.empty(); }
  [[nodiscard]] const Assignment& operator[](std::size_t i) const { return assignments[i]; }
  [[nodiscard]] std::vector<double> costs() const;
};

/// Sum of C[i, columns[i]]. Throws InfiniteEntry when a referenced entry is
/// gated and ShapeMismatch when the vector length is not |I|.
[[nodiscard]] double assignment_cost(const CostMatrix& c, std::span<const int> columns);

/// True iff the columns are in range, pairwise distinct and reference only
/// finite entries.
[[nodiscard]] bool is_valid_assignment(const CostMatrix& c, std::span<const int> columns) noexcept;

[[nodiscard]] Columns all_misdetected(const CostMatrix& c);

/// True iff the solution is valid for `c` and satisfies every RankedSolution
/// invariant (distinct, sorted, costs consistent, size <= requested_k).
[[nodiscard]] bool check_ranked_solution(const CostMatrix& c, const RankedSolution& s);

/// Sorts by ranked_before, removes duplicate column vectors and keeps at most
/// `k` entries.
void rank_and_truncate(std::vector<Assignment>& pool, std::size_t k);

inline constexpr std::size_t kDefaultOracleLimit = 6;

/// Brute-force enumeration of every valid assignment, ranked and truncated to
/// k. Exponential; test oracle only.
[[nodiscard]] RankedSolution enumerate_assignments(const CostMatrix& c, std::size_t k,
                                                   std::size_t oracle_limit = kDefaultOracleLimit);

}  // namespace rankassign
