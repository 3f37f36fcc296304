#include "rankassign/metrics.hpp"

#include <algorithm>
#include <limits>

namespace rankassign {

int kappa(const RankedSolution& pred, const RankedSolution& opt, std::size_t i, std::size_t k,
          std::size_t rho) {
  if (i < 1 || i > k || i > pred.size()) return 0;
  const Columns& p = pred[i - 1].columns;
  const std::size_t last = std::min(k, opt.size());
  if (i <= last && opt[i - 1].columns == p) return 3;
  const std::size_t lo = i > rho ? i - rho : 1;
  const std::size_t hi = std::min(last, i + rho);
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j != i && opt[j - 1].columns == p) return 2;
  }
  for (std::size_t j = 1; j <= last; ++j) {
    if (opt[j - 1].columns == p) return 1;
  }
  return 0;
}

double rank_weight(std::size_t i, std::size_t k) {
  const double kk = static_cast<double>(k);
  return 2.0 * (kk + 1.0 - static_cast<double>(i)) / (kk * (kk + 1.0));
}

double wp_score(const RankedSolution& pred, const RankedSolution& opt, std::size_t k,
                std::size_t rho) {
  if (k == 0) return 0.0;
  // Integer numerator of sum w_i * kappa_i, so the perfect score is exactly 3.
  std::size_t weighted = 0;
  for (std::size_t i = 1; i <= k; ++i) weighted += (k + 1 - i) * static_cast<std::size_t>(kappa(pred, opt, i, k, rho));
  return 2.0 * static_cast<double>(weighted) / (static_cast<double>(k) * static_cast<double>(k + 1));
}

std::vector<int> rank_accuracy(const RankedSolution& pred, const RankedSolution& opt,
                               std::size_t k) {
  std::vector<int> acc(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    acc[i] = (i < pred.size() && i < opt.size() && pred[i].columns == opt[i].columns) ? 1 : 0;
  }
  return acc;
}

double penalized_mean_cost(const RankedSolution& pred, const RankedSolution& opt, std::size_t k) {
  if (opt.empty()) throw Error(ErrorCode::InvalidArgument, "reference solution is empty");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min(k, opt.size()); ++i) worst = std::max(worst, opt[i].cost);
  const double penalty = worst + kMissingPenalty;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += i < pred.size() ? pred[i].cost : penalty;
  return sum / static_cast<double>(k);
}

EvalReport evaluate(const RankedSolution& pred, const RankedSolution& opt, std::size_t k,
                    std::size_t rho) {
  EvalReport r;
  r.rho = rho;
  r.k = std::min(k, opt.size());
  if (r.k == 0) throw Error(ErrorCode::InvalidArgument, "nothing to evaluate: k or reference empty");
  const auto acc = rank_accuracy(pred, opt, r.k);
  r.per_rank_accuracy.assign(acc.begin(), acc.end());
  r.wp = wp_score(pred, opt, r.k, rho);
  r.mean_cost = penalized_mean_cost(pred, opt, r.k);
  return r;
}

void MetricAccumulator::add(const EvalReport& r, double wall_time_us) {
  ++n_;
  wp_sum_ += r.wp;
  cost_sum_ += r.mean_cost;
  time_sum_ += wall_time_us;
  if (acc_sum_.size() < r.per_rank_accuracy.size()) {
    acc_sum_.resize(r.per_rank_accuracy.size(), 0.0);
    rank_counts_.resize(r.per_rank_accuracy.size(), 0);
  }
  for (std::size_t i = 0; i < r.per_rank_accuracy.size(); ++i) {
    acc_sum_[i] += r.per_rank_accuracy[i];
    ++rank_counts_[i];
  }
}

void MetricAccumulator::merge(const MetricAccumulator& other) {
  n_ += other.n_;
  wp_sum_ += other.wp_sum_;
  cost_sum_ += other.cost_sum_;
  time_sum_ += other.time_sum_;
  if (acc_sum_.size() < other.acc_sum_.size()) {
    acc_sum_.resize(other.acc_sum_.size(), 0.0);
    rank_counts_.resize(other.acc_sum_.size(), 0);
  }
  for (std::size_t i = 0; i < other.acc_sum_.size(); ++i) {
    acc_sum_[i] += other.acc_sum_[i];
    rank_counts_[i] += other.rank_counts_[i];
  }
}

double MetricAccumulator::mean_wp() const {
  return n_ ? wp_sum_ / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN();
}

double MetricAccumulator::mean_cost() const {
  return n_ ? cost_sum_ / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN();
}

double MetricAccumulator::mean_wall_time_us() const {
  return n_ ? time_sum_ / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN();
}

double MetricAccumulator::accuracy(std::size_t i) const {
  if (i < 1 || i > rank_counts_.size() || rank_counts_[i - 1] == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return acc_sum_[i - 1] / static_cast<double>(rank_counts_[i - 1]);
}

std::size_t MetricAccumulator::rank_count(std::size_t i) const {
  return (i >= 1 && i <= rank_counts_.size()) ? rank_counts_[i - 1] : 0;
}

}  // namespace rankassign
