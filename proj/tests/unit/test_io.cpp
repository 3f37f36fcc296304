#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "rankassign/exact_solver.hpp"
#include "rankassign/io.hpp"
#include "test_support.hpp"

using namespace rankassign;
using rankassign::testing::inf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rankassign_test_io_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("instance round trip keeps inf and exact doubles") {
  std::mt19937_64 rng(2);
  testing::RandomInstance gen;
  gen.max_tracks = 6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = gen(rng);
    std::vector<Columns> labels;
    for (const auto& a : murty_k_best(c, 3).assignments) labels.push_back(a.columns);
    const auto j = io::instance_to_json(c, labels);
    const auto back = io::instance_from_json(io::Json::parse(j.dump()));
    CHECK(back.cost == c);
    CHECK(back.labels == labels);
  }
  const auto j = io::instance_to_json(testing::small_example());
  CHECK(j.dump() == R"({"num_tracks":2,"num_measurements":1,"detected":[[1.0],[2.0]],"misdetect":[4.0,3.0]})");
  const auto gated = CostMatrix::create(1, 2, {{inf, 1.5}}, {2.0});
  CHECK(io::instance_to_json(gated)["detected"][0][0] == "inf");
}

TEST_CASE("instance parsing errors") {
  auto j = io::instance_to_json(testing::small_example());
  auto bad = j;
  bad["detected"][0][0] = "nan";
  CHECK_THROWS_WITH_AS((void)io::instance_from_json(bad), doctest::Contains("NaN"), Error);
  bad = j;
  bad["misdetect"][0] = "inf";
  try {
    (void)io::instance_from_json(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteMisdetect);
  }
  bad = j;
  bad["num_tracks"] = 3;
  try {
    (void)io::instance_from_json(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  bad = j;
  bad.erase("misdetect");
  CHECK_THROWS_AS((void)io::instance_from_json(bad), Error);
  bad = j;
  bad["labels"] = {{1, 1}};
  CHECK_THROWS_AS((void)io::instance_from_json(bad), Error);
}

TEST_CASE("graph file round trip and targets") {
  const auto c = testing::small_example();
  const auto g = to_bipartite(c);
  const std::vector<Columns> labels{{0, 2}, {1, 0}, {1, 2}};
  const auto j = io::graph_to_json(g, "x", labels, 4);
  CHECK(j["id"] == "x");
  CHECK(j["num_edges"] == 4);
  CHECK(j["num_labels"] == 3);
  CHECK(j["targets"] == io::Json::parse("[[1,0,0,0],[0,1,1,0],[0,1,0,0],[1,0,1,0]]"));
  const auto back = io::graph_from_json(io::Json::parse(j.dump()));
  CHECK(back.edges == g.edges);
  CHECK(back.edge_attrs == g.edge_attrs);
  CHECK(back.source_features == g.source_features);
  CHECK(back.target_features == g.target_features);

  auto shuffled = j;
  std::swap(shuffled["edges"][0], shuffled["edges"][1]);
  CHECK_THROWS_AS((void)io::graph_from_json(shuffled), Error);
  CHECK_THROWS_AS((void)io::graph_to_json(g, "", {{2, 2}}, 1), Error);
}

TEST_CASE("prediction file round trip") {
  io::PredictionFile p{"n01_v01_00000", 2, {{0.1, 0.9}, {0.5, 0.5}}};
  const auto back = io::prediction_from_json(io::Json::parse(io::prediction_to_json(p).dump()));
  CHECK(back.id == p.id);
  CHECK(back.k_max == 2);
  CHECK(back.values == p.values);
  auto bad = io::prediction_to_json(p);
  bad["values"][1] = {0.5};
  CHECK_THROWS_AS((void)io::prediction_from_json(bad), Error);
  bad = io::prediction_to_json(p);
  bad["num_edges"] = 3;
  CHECK_THROWS_AS((void)io::prediction_from_json(bad), Error);
}

TEST_CASE("dataset write, load and byte-identical regeneration") {
  auto spec = DatasetSpec::grid(3, 3, 2, 11);
  spec.k_max = 5;
  const auto entries = build_dataset(spec);
  const auto dir_a = scratch("a");
  const auto dir_b = scratch("b");
  const auto m = io::write_dataset(dir_a, spec, entries);
  CHECK(m.instances.size() == entries.size());
  (void)io::write_dataset(dir_b, spec, build_dataset(spec));

  for (const auto& row : m.instances) CHECK(slurp(dir_a / row.path) == slurp(dir_b / row.path));
  CHECK(slurp(io::manifest_path(dir_a)) == slurp(io::manifest_path(dir_b)));

  const auto loaded = io::load_dataset(dir_a);
  REQUIRE(loaded.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(loaded[i].id == entries[i].id);
    CHECK(loaded[i].cost == entries[i].cost);
    CHECK(loaded[i].labels == entries[i].labels);
    CHECK(loaded[i].requested_k == entries[i].requested_k);
    CHECK(loaded[i].vartheta == entries[i].vartheta);
  }

  auto code_of = [](const fs::path& dir) {
    try {
      (void)io::load_dataset(dir);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };

  fs::remove(dir_b / m.instances.front().path);
  CHECK(code_of(dir_b) == ErrorCode::ManifestMismatch);

  auto mj = io::read_json(io::manifest_path(dir_a));
  mj["instances"][0]["num_measurements"] = 99;
  io::write_json(io::manifest_path(dir_a), mj);
  CHECK(code_of(dir_a) == ErrorCode::ManifestMismatch);

  CHECK(code_of(scratch("none")) == ErrorCode::ManifestMismatch);
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("read_json failures") {
  const auto dir = scratch("bad");
  io::write_text(dir / "broken.json", "{not json");
  try {
    (void)io::read_json(dir / "broken.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormatError);
  }
  try {
    (void)io::read_json(dir / "absent.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoFailure);
  }
  fs::remove_all(dir);
}
