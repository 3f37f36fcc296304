#include "rankassign/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "rankassign/exact_solver.hpp"
#include "rankassign/parallel.hpp"

namespace rankassign {

double sample_mixture(Engine& rng, const std::array<MixtureComponent, 2>& mixture) {
  const auto& comp = uniform01(rng) < 0.5 ? mixture[0] : mixture[1];
  return comp.mean + std::sqrt(comp.variance) * standard_normal(rng);
}

GeneratedInstance generate_instance(const GenConfig& cfg) {
  if (cfg.nu_s == 0) throw Error(ErrorCode::InvalidArgument, "nu_s must be >= 1");
  if (!(cfg.vartheta >= 0.0 && cfg.vartheta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "vartheta must lie in [0, 1]");
  }
  if (!(cfg.k_mean > 0.0)) throw Error(ErrorCode::InvalidArgument, "k_mean must be positive");

  Engine rng(cfg.seed);
  const std::size_t lo = std::max<std::size_t>(1, cfg.nu_s - 1);
  const std::size_t hi = cfg.nu_s + 4;
  const auto measurements = static_cast<std::size_t>(uniform_int(rng, lo, hi));

  std::vector<std::vector<double>> detected(cfg.nu_s, std::vector<double>(measurements));
  for (auto& row : detected) {
    for (auto& v : row) {
      // Draw both variates unconditionally so the stream layout does not
      // depend on vartheta.
      const bool gated = uniform01(rng) < cfg.vartheta;
      const double cost = sample_mixture(rng, cfg.mixture);
      v = gated ? kInf : cost;
    }
  }
  std::vector<double> misdetect(cfg.nu_s);
  for (auto& c : misdetect) c = sample_mixture(rng, cfg.mixture);

  const std::size_t k = std::max<unsigned>(1, poisson(rng, cfg.k_mean));
  return {CostMatrix::create(cfg.nu_s, measurements, detected, misdetect), k};
}

DatasetSpec DatasetSpec::grid(std::size_t nu_s_max, std::size_t vartheta_steps, std::size_t count,
                              std::uint64_t seed) {
  DatasetSpec spec;
  for (std::size_t n = 1; n <= nu_s_max; ++n) spec.nu_s_values.push_back(n);
  for (std::size_t s = 1; s <= vartheta_steps; ++s) {
    spec.vartheta_values.push_back(static_cast<double>(s) / static_cast<double>(vartheta_steps + 1));
  }
  spec.count = count;
  spec.seed = seed;
  return spec;
}

std::string instance_id(std::size_t nu_s, std::size_t vartheta_step, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n%02zu_v%02zu_%05zu", nu_s, vartheta_step, index);
  return buf;
}

std::vector<DatasetEntry> build_dataset(const DatasetSpec& spec) {
  if (spec.count == 0) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (spec.nu_s_values.empty() || spec.vartheta_values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "dataset grid is empty");
  }

  struct Slot {
    std::size_t nu_s, step, index;
    double vartheta;
  };
  std::vector<Slot> slots;
  for (std::size_t n : spec.nu_s_values) {
    for (std::size_t s = 0; s < spec.vartheta_values.size(); ++s) {
      for (std::size_t i = 0; i < spec.count; ++i) slots.push_back({n, s + 1, i, spec.vartheta_values[s]});
    }
  }

  std::vector<std::optional<DatasetEntry>> out(slots.size());
  auto build = [&](std::size_t idx) {
    const Slot& slot = slots[idx];
    GenConfig cfg;
    cfg.nu_s = slot.nu_s;
    cfg.vartheta = slot.vartheta;
    cfg.k_mean = spec.k_mean;
    cfg.seed = derive_seed(spec.seed, slot.nu_s * 1000 + slot.step, slot.index);
    auto gen = generate_instance(cfg);
    DatasetEntry e{instance_id(slot.nu_s, slot.step, slot.index), slot.nu_s, slot.vartheta,
                   gen.requested_k, std::move(gen.cost), {}};
    if (spec.with_labels) {
      for (auto& a : murty_k_best(e.cost, spec.k_max).assignments) e.labels.push_back(std::move(a.columns));
    }
    out[idx] = std::move(e);
  };

  parallel_for(slots.size(), spec.jobs, build);

  std::vector<DatasetEntry> entries;
  entries.reserve(out.size());
  for (auto& e : out) entries.push_back(std::move(*e));
  return entries;
}

}  // namespace rankassign
