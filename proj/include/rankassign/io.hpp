#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankassign/cost_model.hpp"
#include "rankassign/datagen.hpp"
#include "rankassign/graph.hpp"
#include "rankassign/postproc.hpp"

// On-disk formats. Everything is UTF-8 JSON written with a fixed key order;
// gated costs are the string "inf". Prediction rows and graph edges share the
// row-major (source, target) edge order.

namespace rankassign::io {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Cost matrix plus optional reference labels, as stored in an instance file.
struct InstanceFile {
  CostMatrix cost;
  std::vector<Columns> labels;
};

[[nodiscard]] Json instance_to_json(const CostMatrix& c, const std::vector<Columns>& labels = {});
[[nodiscard]] InstanceFile instance_from_json(const Json& j);

/// `targets`, when given, holds one 0/1 column per label in edge order.
[[nodiscard]] Json graph_to_json(const BipartiteGraph& g, const std::string& id = {},
                                 const std::vector<Columns>& labels = {}, std::size_t k_max = 0);
[[nodiscard]] BipartiteGraph graph_from_json(const Json& j);

struct PredictionFile {
  std::string id;
  std::size_t k_max = 0;
  std::vector<std::vector<double>> values;  ///< |E| rows of k_max scores
};

[[nodiscard]] Json prediction_to_json(const PredictionFile& p);
[[nodiscard]] PredictionFile prediction_from_json(const Json& j);

[[nodiscard]] Json ranked_solution_to_json(const RankedSolution& s);

struct ManifestEntry {
  std::string id;
  std::string path;  ///< relative to the dataset directory
  std::size_t nu_s = 0;
  double vartheta = 0.0;
  std::size_t num_measurements = 0;
  std::size_t requested_k = 1;
  std::size_t num_labels = 0;
};

struct Manifest {
  std::uint64_t seed = 0;
  std::size_t k_max = 10;
  double k_mean = 4.0;
  std::size_t count = 0;
  std::vector<std::size_t> nu_s_values;
  std::vector<double> vartheta_values;
  std::vector<ManifestEntry> instances;
};

[[nodiscard]] Json manifest_to_json(const Manifest& m);
[[nodiscard]] Manifest manifest_from_json(const Json& j);

[[nodiscard]] Json read_json(const fs::path& path);
void write_json(const fs::path& path, const Json& j);
void write_text(const fs::path& path, const std::string& text);

/// Writes instances/<id>.json for each entry plus manifest.json.
Manifest write_dataset(const fs::path& dir, const DatasetSpec& spec,
                       const std::vector<DatasetEntry>& entries);

/// Loads every instance listed in dir/manifest.json, checking each against
/// its manifest row.
[[nodiscard]] std::vector<DatasetEntry> load_dataset(const fs::path& dir);

[[nodiscard]] inline fs::path manifest_path(const fs::path& dir) { return dir / "manifest.json"; }

}  // namespace rankassign::io
