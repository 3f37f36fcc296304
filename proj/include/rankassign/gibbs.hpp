#pragma once

#include <cstddef>
#include <cstdint>

#include "rankassign/cost_model.hpp"

namespace rankassign {

struct GibbsConfig {
  std::size_t iterations = 1;  ///< full sweeps over all rows
  std::uint64_t seed = 0;
  std::size_t k = 1;
};

/// Sweep budget used when the caller does not pick one: 100 sweeps per track.
[[nodiscard]] inline std::size_t default_gibbs_iterations(const CostMatrix& c) {
  return 100 * c.num_tracks();
}

/// Approximate ranked assignment by a single Gibbs chain.
///
/// The chain starts at the optimal assignment. A sweep visits rows in order
/// and redraws each row's column among the finite, currently unoccupied
/// columns with probability proportional to exp(-cost). Every visited state is
/// kept; the distinct states are returned cheapest first, at most cfg.k of
/// them. Output depends only on (c, cfg).
[[nodiscard]] RankedSolution gibbs_sample(const CostMatrix& c, const GibbsConfig& cfg);

}  // namespace rankassign
