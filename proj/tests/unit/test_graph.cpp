#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "rankassign/graph.hpp"
#include "test_support.hpp"

using namespace rankassign;
using rankassign::testing::inf;

TEST_CASE("line_features") {
  const std::vector<double> mixed{1.0, inf, 3.0};
  const auto f = line_features(mixed, 3);
  CHECK(f[0] == doctest::Approx(2.0 / 3.0));
  CHECK(f[1] == 1.0);
  CHECK(f[2] == 3.0);
  CHECK(f[3] == 2.0);
  CHECK(f[4] == doctest::Approx(std::sqrt(10.0)));
  CHECK(f[4] == doctest::Approx(3.1623).epsilon(1e-4));

  const std::vector<double> single{5.0};
  CHECK(line_features(single, 1) == NodeFeatures{1.0, 5.0, 5.0, 5.0, 5.0});

  const std::vector<double> gated{inf, inf};
  CHECK(line_features(gated, 2) == NodeFeatures{0.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("to_bipartite on the worked examples") {
  const auto g = to_bipartite(testing::small_example());
  CHECK(g.num_source == 2);
  CHECK(g.num_target == 3);
  CHECK(g.edges == std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}, {1, 2}});
  CHECK(g.edge_attrs == std::vector<double>{1, 4, 2, 3});
  // Row 0 = [1, 4, inf]; column 0 = [1, 2]; column 2 = [inf, 3].
  CHECK(g.source_features[0] == line_features(std::vector<double>{1, 4, inf}, 3));
  CHECK(g.target_features[0] == line_features(std::vector<double>{1, 2}, 2));
  CHECK(g.target_features[2] == line_features(std::vector<double>{inf, 3}, 2));
  CHECK(g.edge_index(1, 2) == 3);
  CHECK(g.edge_index(0, 2) == -1);

  const auto single = to_bipartite(testing::single_example());
  CHECK(single.edges == std::vector<Edge>{{0, 0}, {0, 1}});
  CHECK(single.edge_attrs == std::vector<double>{2, 5});
}

TEST_CASE("misdetection edges target column |Z| + i") {
  const auto c = CostMatrix::create(3, 2, {{inf, inf}, {inf, inf}, {inf, inf}}, {1, 2, 3});
  const auto g = to_bipartite(c);
  CHECK(g.edges == std::vector<Edge>{{0, 2}, {1, 3}, {2, 4}});
  CHECK(g.target_features[0] == NodeFeatures{});
}

TEST_CASE("normalize_graph") {
  const auto g = normalize_graph(to_bipartite(testing::small_example()));
  REQUIRE(g.edge_attrs.size() == 4);
  CHECK(g.edge_attrs[0] == 0.0);
  CHECK(g.edge_attrs[1] == 1.0);
  CHECK(g.edge_attrs[2] == doctest::Approx(1.0 / 3.0));
  CHECK(g.edge_attrs[3] == doctest::Approx(2.0 / 3.0));

  BipartiteGraph flat;
  flat.num_source = 1;
  flat.num_target = 2;
  flat.source_features = {NodeFeatures{1, 3, 0, 0, 0}};
  flat.target_features = {NodeFeatures{1, 1, 0, 0, 0}, NodeFeatures{1, 3, 0, 0, 0}};
  flat.edges = {{0, 0}, {0, 1}};
  flat.edge_attrs = {5, 5};
  const auto n = normalize_graph(flat);
  CHECK(n.edge_attrs == std::vector<double>{0, 0});
  CHECK(n.source_features[0][1] == 1.0);
  CHECK(n.target_features[0][1] == 0.0);
  CHECK(n.target_features[1][1] == 1.0);
  CHECK(n.source_features[0][0] == 0.0);  // constant dimension
  CHECK(flat.edge_attrs == std::vector<double>{5, 5});  // input untouched
}

TEST_CASE("graph properties over random instances") {
  std::mt19937_64 rng(4);
  testing::RandomInstance gen;
  gen.max_tracks = 10;
  gen.max_measurements = 12;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = gen(rng);
    const auto g = to_bipartite(c);
    CHECK(g.num_edges() == c.finite_count());
    CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));

    // The (edge, attr) set reconstructs every finite cell exactly.
    std::map<std::pair<int, int>, double> cells;
    for (std::size_t e = 0; e < g.num_edges(); ++e) cells[{g.edges[e].source, g.edges[e].target}] = g.edge_attrs[e];
    for (std::size_t i = 0; i < c.num_tracks(); ++i) {
      for (std::size_t j = 0; j < c.num_columns(); ++j) {
        const auto it = cells.find({static_cast<int>(i), static_cast<int>(j)});
        if (c.finite(i, j)) {
          REQUIRE(it != cells.end());
          CHECK(it->second == c.at(i, j));
        } else {
          CHECK(it == cells.end());
        }
      }
    }

    const auto n = normalize_graph(g);
    for (const auto& f : n.source_features) {
      for (double v : f) CHECK((v >= 0.0 && v <= 1.0));
    }
    for (const auto& f : n.target_features) {
      for (double v : f) CHECK((v >= 0.0 && v <= 1.0));
    }
    for (double a : n.edge_attrs) CHECK((a >= 0.0 && a <= 1.0));

    const auto twice = normalize_graph(n);
    for (std::size_t e = 0; e < n.num_edges(); ++e) CHECK(twice.edge_attrs[e] == doctest::Approx(n.edge_attrs[e]));

    // Min-max preserves the order of the attributes.
    for (std::size_t a = 0; a < g.num_edges(); ++a) {
      for (std::size_t b = 0; b < g.num_edges(); ++b) {
        if (g.edge_attrs[a] < g.edge_attrs[b]) CHECK(n.edge_attrs[a] <= n.edge_attrs[b]);
      }
    }
  }
}
