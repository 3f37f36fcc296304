#pragma once

#include <cstddef>
#include <vector>

#include "rankassign/cost_model.hpp"

namespace rankassign {

inline constexpr std::size_t kDefaultRho = 2;
inline constexpr double kMissingPenalty = 0.1;

/// Position agreement of predicted rank `i` (1-based) with the reference:
/// 3 exact slot, 2 within +-rho slots, 1 elsewhere in the first k reference
/// ranks, 0 otherwise or when the prediction has no rank i.
[[nodiscard]] int kappa(const RankedSolution& pred, const RankedSolution& opt, std::size_t i,
                        std::size_t k, std::size_t rho = kDefaultRho);

/// Weight of rank i (1-based) out of k; the k weights sum to one and decrease
/// linearly.
[[nodiscard]] double rank_weight(std::size_t i, std::size_t k);

/// Weighted position score in [0, 3].
[[nodiscard]] double wp_score(const RankedSolution& pred, const RankedSolution& opt, std::size_t k,
                              std::size_t rho = kDefaultRho);

/// Entry i is 1 iff pred has a rank-i assignment equal to opt's.
[[nodiscard]] std::vector<int> rank_accuracy(const RankedSolution& pred, const RankedSolution& opt,
                                             std::size_t k);

/// Mean cost over k slots; missing predicted slots cost (worst reference cost
/// among the first k) + 0.1.
[[nodiscard]] double penalized_mean_cost(const RankedSolution& pred, const RankedSolution& opt,
                                         std::size_t k);

/// Per-instance scores against a reference. `k` is clipped to the number of
/// reference assignments so instances with fewer valid assignments than the
/// request are scored over what exists.
struct EvalReport {
  std::vector<double> per_rank_accuracy;
  double mean_cost = 0.0;
  double wp = 0.0;
  std::size_t k = 0;
  std::size_t rho = kDefaultRho;
};

[[nodiscard]] EvalReport evaluate(const RankedSolution& pred, const RankedSolution& opt,
                                  std::size_t k, std::size_t rho = kDefaultRho);

/// Order-independent dataset aggregate. Rank-i accuracy averages only over
/// instances that have at least i reference assignments; `rank_counts`
/// records how many contributed.
class MetricAccumulator {
 public:
  void add(const EvalReport& r, double wall_time_us = 0.0);
  void merge(const MetricAccumulator& other);

  [[nodiscard]] std::size_t count() const noexcept { return n_; }
  [[nodiscard]] double mean_wp() const;
  [[nodiscard]] double mean_cost() const;
  [[nodiscard]] double mean_wall_time_us() const;
  /// Mean accuracy at 1-based rank i; NaN when no instance reaches rank i.
  [[nodiscard]] double accuracy(std::size_t i) const;
  [[nodiscard]] std::size_t rank_count(std::size_t i) const;

 private:
  std::size_t n_ = 0;
  double wp_sum_ = 0.0;
  double cost_sum_ = 0.0;
  double time_sum_ = 0.0;
  std::vector<double> acc_sum_;
  std::vector<std::size_t> rank_counts_;
};

}  // namespace rankassign
