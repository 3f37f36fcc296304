#include "rankassign/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rankassign::io {

namespace {

[[noreturn]] void format_error(const std::string& what) { throw Error(ErrorCode::FormatError, what); }

Json cost_value(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double parse_cost(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "+inf") return kInf;
    if (s == "nan" || s == "NaN") throw Error(ErrorCode::InvalidEntry, "NaN cost in file");
  }
  format_error("cost entry must be a number or \"inf\"");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) format_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    format_error(std::string("bad field '") + key + "': " + e.what());
  }
}

Columns parse_columns(const Json& j) {
  if (!j.is_array()) format_error("assignment must be an array of column indices");
  Columns out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) format_error("column index must be an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

Json instance_to_json(const CostMatrix& c, const std::vector<Columns>& labels) {
  Json j;
  j["num_tracks"] = c.num_tracks();
  j["num_measurements"] = c.num_measurements();
  Json detected = Json::array();
  for (std::size_t i = 0; i < c.num_tracks(); ++i) {
    Json row = Json::array();
    for (std::size_t m = 0; m < c.num_measurements(); ++m) row.push_back(cost_value(c.detected(i, m)));
    detected.push_back(std::move(row));
  }
  j["detected"] = std::move(detected);
  Json misdetect = Json::array();
  for (std::size_t i = 0; i < c.num_tracks(); ++i) misdetect.push_back(c.misdetect(i));
  j["misdetect"] = std::move(misdetect);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

InstanceFile instance_from_json(const Json& j) {
  const auto tracks = get<std::size_t>(j, "num_tracks");
  const auto measurements = get<std::size_t>(j, "num_measurements");
  const Json& det = field(j, "detected");
  const Json& mis = field(j, "misdetect");
  if (!det.is_array() || !mis.is_array()) format_error("detected and misdetect must be arrays");

  std::vector<std::vector<double>> detected;
  for (const auto& row : det) {
    if (!row.is_array()) format_error("detected must be a 2-D array");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(parse_cost(v));
    detected.push_back(std::move(r));
  }
  std::vector<double> misdetect;
  for (const auto& v : mis) misdetect.push_back(parse_cost(v));

  InstanceFile out{CostMatrix::create(tracks, measurements, detected, misdetect), {}};
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      Columns cols = parse_columns(l);
      if (!is_valid_assignment(out.cost, cols)) format_error("label is not a valid assignment");
      out.labels.push_back(std::move(cols));
    }
  }
  return out;
}

Json graph_to_json(const BipartiteGraph& g, const std::string& id, const std::vector<Columns>& labels,
                   std::size_t k_max) {
  Json j;
  if (!id.empty()) j["id"] = id;
  j["num_source"] = g.num_source;
  j["num_target"] = g.num_target;
  j["num_edges"] = g.num_edges();
  j["source_features"] = g.source_features;
  j["target_features"] = g.target_features;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({e.source, e.target});
  j["edges"] = std::move(edges);
  j["edge_attrs"] = g.edge_attrs;
  if (k_max > 0) {
    std::vector<std::vector<int>> targets(g.num_edges(), std::vector<int>(k_max, 0));
    for (std::size_t s = 0; s < std::min(k_max, labels.size()); ++s) {
      for (std::size_t row = 0; row < labels[s].size(); ++row) {
        const long e = g.edge_index(static_cast<int>(row), labels[s][row]);
        if (e < 0) format_error("label uses a gated cell");
        targets[static_cast<std::size_t>(e)][s] = 1;
      }
    }
    j["k_max"] = k_max;
    j["num_labels"] = std::min(k_max, labels.size());
    j["targets"] = std::move(targets);
  }
  return j;
}

BipartiteGraph graph_from_json(const Json& j) {
  BipartiteGraph g;
  g.num_source = get<std::size_t>(j, "num_source");
  g.num_target = get<std::size_t>(j, "num_target");
  g.source_features = get<std::vector<NodeFeatures>>(j, "source_features");
  g.target_features = get<std::vector<NodeFeatures>>(j, "target_features");
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) format_error("edge must be a [source, target] pair");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  g.edge_attrs = get<std::vector<double>>(j, "edge_attrs");
  if (g.source_features.size() != g.num_source || g.target_features.size() != g.num_target ||
      g.edge_attrs.size() != g.edges.size()) {
    format_error("graph arrays disagree with declared counts");
  }
  for (std::size_t e = 1; e < g.edges.size(); ++e) {
    if (!(g.edges[e - 1] < g.edges[e])) format_error("graph edges are not in canonical order");
  }
  return g;
}

Json prediction_to_json(const PredictionFile& p) {
  Json j;
  j["id"] = p.id;
  j["k_max"] = p.k_max;
  j["num_edges"] = p.values.size();
  j["values"] = p.values;
  return j;
}

PredictionFile prediction_from_json(const Json& j) {
  PredictionFile p;
  if (j.contains("id")) p.id = get<std::string>(j, "id");
  p.k_max = get<std::size_t>(j, "k_max");
  p.values = get<std::vector<std::vector<double>>>(j, "values");
  if (j.contains("num_edges") && get<std::size_t>(j, "num_edges") != p.values.size()) {
    format_error("prediction num_edges disagrees with the values array");
  }
  for (const auto& row : p.values) {
    if (row.size() != p.k_max) format_error("prediction row width differs from k_max");
  }
  return p;
}

Json ranked_solution_to_json(const RankedSolution& s) {
  Json j;
  j["requested_k"] = s.requested_k;
  Json list = Json::array();
  for (const auto& a : s.assignments) {
    Json item;
    item["columns"] = a.columns;
    item["cost"] = a.cost;
    list.push_back(std::move(item));
  }
  j["assignments"] = std::move(list);
  return j;
}

Json manifest_to_json(const Manifest& m) {
  Json j;
  j["format"] = "rankassign-dataset";
  j["version"] = 1;
  j["seed"] = m.seed;
  j["k_max"] = m.k_max;
  j["k_mean"] = m.k_mean;
  j["count"] = m.count;
  j["nu_s_values"] = m.nu_s_values;
  j["vartheta_values"] = m.vartheta_values;
  Json list = Json::array();
  for (const auto& e : m.instances) {
    Json item;
    item["id"] = e.id;
    item["path"] = e.path;
    item["nu_s"] = e.nu_s;
    item["vartheta"] = e.vartheta;
    item["num_measurements"] = e.num_measurements;
    item["requested_k"] = e.requested_k;
    item["num_labels"] = e.num_labels;
    list.push_back(std::move(item));
  }
  j["instances"] = std::move(list);
  return j;
}

Manifest manifest_from_json(const Json& j) {
  if (!j.contains("format") || j.at("format") != "rankassign-dataset") {
    throw Error(ErrorCode::ManifestMismatch, "not a dataset manifest");
  }
  Manifest m;
  m.seed = get<std::uint64_t>(j, "seed");
  m.k_max = get<std::size_t>(j, "k_max");
  m.k_mean = get<double>(j, "k_mean");
  m.count = get<std::size_t>(j, "count");
  m.nu_s_values = get<std::vector<std::size_t>>(j, "nu_s_values");
  m.vartheta_values = get<std::vector<double>>(j, "vartheta_values");
  for (const auto& item : field(j, "instances")) {
    ManifestEntry e;
    e.id = get<std::string>(item, "id");
    e.path = get<std::string>(item, "path");
    e.nu_s = get<std::size_t>(item, "nu_s");
    e.vartheta = get<double>(item, "vartheta");
    e.num_measurements = get<std::size_t>(item, "num_measurements");
    e.requested_k = get<std::size_t>(item, "requested_k");
    e.num_labels = get<std::size_t>(item, "num_labels");
    m.instances.push_back(std::move(e));
  }
  return m;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    format_error(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(1) + "\n"); }

Manifest write_dataset(const fs::path& dir, const DatasetSpec& spec,
                       const std::vector<DatasetEntry>& entries) {
  Manifest m;
  m.seed = spec.seed;
  m.k_max = spec.k_max;
  m.k_mean = spec.k_mean;
  m.count = spec.count;
  m.nu_s_values = spec.nu_s_values;
  m.vartheta_values = spec.vartheta_values;
  for (const auto& e : entries) {
    const std::string rel = "instances/" + e.id + ".json";
    write_json(dir / rel, instance_to_json(e.cost, e.labels));
    m.instances.push_back({e.id, rel, e.nu_s, e.vartheta, e.cost.num_measurements(), e.requested_k,
                           e.labels.size()});
  }
  write_json(manifest_path(dir), manifest_to_json(m));
  return m;
}

std::vector<DatasetEntry> load_dataset(const fs::path& dir) {
  const fs::path mpath = manifest_path(dir);
  if (!fs::exists(mpath)) throw Error(ErrorCode::ManifestMismatch, "no manifest at " + mpath.string());
  const Manifest m = manifest_from_json(read_json(mpath));
  std::vector<DatasetEntry> out;
  out.reserve(m.instances.size());
  for (const auto& row : m.instances) {
    const fs::path p = dir / row.path;
    if (!fs::exists(p)) throw Error(ErrorCode::ManifestMismatch, "manifest lists missing file " + row.path);
    auto inst = instance_from_json(read_json(p));
    if (inst.cost.num_tracks() != row.nu_s || inst.cost.num_measurements() != row.num_measurements ||
        inst.labels.size() != row.num_labels) {
      throw Error(ErrorCode::ManifestMismatch, "instance " + row.id + " disagrees with the manifest");
    }
    out.push_back({row.id, row.nu_s, row.vartheta, row.requested_k, std::move(inst.cost),
                   std::move(inst.labels)});
  }
  return out;
}

}  // namespace rankassign::io
