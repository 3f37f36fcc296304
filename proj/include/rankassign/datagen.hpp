#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rankassign/cost_model.hpp"
#include "rankassign/rng.hpp"

namespace rankassign {

struct MixtureComponent {
  double mean = 0.0;
  double variance = 1.0;
};

/// Synthetic instance parameters. Costs come from an equal-weight mixture of
/// two Gaussians; each detected cost is gated with probability `vartheta`.
struct GenConfig {
  std::size_t nu_s = 1;
  double vartheta = 0.0;
  double k_mean = 4.0;
  std::uint64_t seed = 0;
  std::array<MixtureComponent, 2> mixture{{{-2.5, 0.5}, {0.5, 1.5}}};
};

struct GeneratedInstance {
  CostMatrix cost;
  std::size_t requested_k = 1;
};

[[nodiscard]] double sample_mixture(Engine& rng, const std::array<MixtureComponent, 2>& mixture);

/// Measurement count is uniform on [max(1, nu_s - 1), nu_s + 4]; requested k
/// is Poisson(k_mean) clamped to at least 1.
[[nodiscard]] GeneratedInstance generate_instance(const GenConfig& cfg);

struct DatasetSpec {
  std::vector<std::size_t> nu_s_values;   ///< default 1..15
  std::vector<double> vartheta_values;    ///< default 0.1..0.9
  std::size_t count = 1;                  ///< instances per (nu_s, vartheta) cell
  std::uint64_t seed = 0;
  std::size_t k_max = 10;                 ///< number of reference labels per instance
  double k_mean = 4.0;
  bool with_labels = true;
  std::size_t jobs = 1;

  static DatasetSpec grid(std::size_t nu_s_max, std::size_t vartheta_steps, std::size_t count,
                          std::uint64_t seed);
};

struct DatasetEntry {
  std::string id;
  std::size_t nu_s = 0;
  double vartheta = 0.0;
  std::size_t requested_k = 1;
  CostMatrix cost;
  std::vector<Columns> labels;  ///< reference ranking, cheapest first
};

/// Stable identifier of instance `index` in cell (nu_s, vartheta_step).
[[nodiscard]] std::string instance_id(std::size_t nu_s, std::size_t vartheta_step, std::size_t index);

/// All cells in (nu_s, vartheta) order, `count` instances each. Each instance
/// is a pure function of (seed, cell, index), so the result does not depend
/// on `jobs`.
[[nodiscard]] std::vector<DatasetEntry> build_dataset(const DatasetSpec& spec);

}  // namespace rankassign
