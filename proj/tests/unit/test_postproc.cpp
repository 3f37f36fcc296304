#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rankassign/exact_solver.hpp"
#include "rankassign/postproc.hpp"
#include "test_support.hpp"

using namespace rankassign;

namespace {

// Builds a one-column prediction from a dense matrix, reading scores only at
// edges.
PredictionMatrix from_dense(const CostMatrix& c, const std::vector<std::vector<double>>& dense,
                            std::size_t k_max = 1) {
  const auto g = to_bipartite(c);
  std::vector<std::vector<double>> values;
  for (const auto& e : g.edges) values.emplace_back(k_max, dense[e.source][e.target]);
  return PredictionMatrix::create(values, g);
}

}  // namespace

TEST_CASE("column_to_dense scatters by edge order") {
  const auto single = to_bipartite(testing::single_example());
  const auto p1 = PredictionMatrix::create({{0.9}, {0.2}}, single);
  CHECK(column_to_dense(p1, 0).nested() == std::vector<std::vector<double>>{{0.9, 0.2}});

  const auto g = to_bipartite(testing::small_example());
  const auto p2 = PredictionMatrix::create({{0.9}, {0.1}, {0.2}, {0.8}}, g);
  CHECK(column_to_dense(p2, 0).nested() == std::vector<std::vector<double>>{{0.9, 0.1, 0.0}, {0.2, 0.0, 0.8}});

  const auto p3 = PredictionMatrix::create({{0.0}, {0.0}, {0.0}, {0.0}}, g);
  CHECK(column_to_dense(p3, 0).nested() == std::vector<std::vector<double>>{{0, 0, 0}, {0, 0, 0}});
  CHECK_THROWS_AS((void)column_to_dense(p3, 1), Error);
}

TEST_CASE("PredictionMatrix validation") {
  const auto g = to_bipartite(testing::small_example());
  CHECK_THROWS_AS((void)PredictionMatrix::create({{0.5}, {0.5}}, g), Error);
  CHECK_THROWS_AS((void)PredictionMatrix::create({{0.5}, {0.5}, {0.5}, {1.5}}, g), Error);
  CHECK_THROWS_AS((void)PredictionMatrix::create({{0.5}, {0.5, 0.1}, {0.5}, {0.5}}, g), Error);
}

TEST_CASE("greedy expansion worked example") {
  const auto c = testing::small_example();
  const auto pred = from_dense(c, {{0.9, 0.6, 0.0}, {0.2, 0.0, 0.8}});
  const auto cands = greedy_candidates(column_to_dense(pred, 0), kDefaultTheta);
  CHECK(cands == std::vector<Columns>{{0, 2}, {1, 2}});
  CHECK(greedy_post_process(pred, c).costs() == std::vector<double>{4.0});  // truncated to k_max

  const auto s = greedy_post_process(from_dense(c, {{0.9, 0.6, 0.0}, {0.2, 0.0, 0.8}}, 2), c);
  CHECK(s.costs() == std::vector<double>{4.0, 7.0});
  CHECK(s[0].columns == Columns{0, 2});
  CHECK(s[1].columns == Columns{1, 2});
}

TEST_CASE("duplicate-column argmax is rejected") {
  const auto c = testing::small_example();
  const auto pred = from_dense(c, {{0.9, 0.1, 0.0}, {0.8, 0.0, 0.3}});
  CHECK(greedy_candidates(column_to_dense(pred, 0), kDefaultTheta) == std::vector<Columns>{{0, 0}});
  CHECK(greedy_post_process(pred, c).empty());
}

TEST_CASE("row with most entries above threshold goes first, lowest row on ties") {
  DenseScores s(2, 3);
  s.at(0, 0) = 0.7; s.at(0, 1) = 0.6;
  s.at(1, 0) = 0.9; s.at(1, 1) = 0.55; s.at(1, 2) = 0.51;
  // Row 1 (three entries >= 0.5) expands first; then rows 0 and 1 tie at two
  // and row 0 wins; finally row 1 again.
  const auto cands = greedy_candidates(s, 0.5);
  CHECK(cands == std::vector<Columns>{{0, 0}, {0, 1}, {1, 1}, {1, 2}});
}

TEST_CASE("theta thresholds rather than rounds") {
  DenseScores s(1, 2);
  s.at(0, 0) = 0.45;
  s.at(0, 1) = 0.42;
  CHECK(greedy_candidates(s, 0.5).size() == 1);
  CHECK(greedy_candidates(s, 0.4) == std::vector<Columns>{{0}, {1}});
  CHECK_THROWS_AS((void)greedy_post_process(from_dense(testing::single_example(), {{0.4, 0.2}}),
                                            testing::single_example(), {1.0, 1}),
                  Error);
}

TEST_CASE("prediction must match the cost matrix") {
  const auto pred = from_dense(testing::single_example(), {{0.9, 0.2}});
  CHECK_THROWS_AS((void)greedy_post_process(pred, testing::small_example()), Error);
}

TEST_CASE("one-hot Murty output is a fixed point") {
  std::mt19937_64 rng(12);
  testing::RandomInstance gen;
  gen.max_tracks = 8;
  gen.max_measurements = 9;
  for (int trial = 0; trial < 200; ++trial) {
    gen.integer_costs = trial % 4 == 0;
    const auto c = gen(rng);
    const std::size_t k_max = 10;
    const auto ref = murty_k_best(c, k_max);
    const auto pred = PredictionMatrix::one_hot(to_bipartite(c), ref, k_max);
    const auto out = greedy_post_process(pred, c);
    CHECK(out.assignments == ref.assignments);
    CHECK(out.costs() == ref.costs());
  }
}

TEST_CASE("random soft predictions never yield invalid assignments") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  testing::RandomInstance gen;
  gen.max_tracks = 7;
  gen.max_measurements = 8;
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = gen(rng);
    const auto g = to_bipartite(c);
    const std::size_t k_max = 1 + trial % 10;
    std::vector<std::vector<double>> values(g.num_edges(), std::vector<double>(k_max));
    for (auto& row : values) {
      for (auto& v : row) v = score(rng);
    }
    const auto pred = PredictionMatrix::create(values, g);
    const auto out = greedy_post_process(pred, c);
    CHECK(out.size() <= k_max);
    CHECK(check_ranked_solution(c, out));

    // Every valid raw argmax makes it into the candidate pool.
    std::vector<Assignment> pool;
    for (std::size_t i = 0; i < k_max; ++i) {
      for (auto& cols : greedy_candidates(column_to_dense(pred, i), 0.5)) {
        if (is_valid_assignment(c, cols)) pool.push_back({cols, assignment_cost(c, cols)});
      }
    }
    for (std::size_t i = 0; i < k_max; ++i) {
      const auto raw = row_argmax(column_to_dense(pred, i));
      if (is_valid_assignment(c, raw)) {
        CHECK(std::find_if(pool.begin(), pool.end(), [&](const Assignment& a) { return a.columns == raw; }) !=
              pool.end());
      }
    }

    PostProcessOptions parallel;
    parallel.jobs = 4;
    CHECK(greedy_post_process(pred, c, parallel).assignments == out.assignments);
  }
}
