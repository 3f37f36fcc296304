#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rankassign/exact_solver.hpp"
#include "rankassign/gibbs.hpp"
#include "test_support.hpp"

using namespace rankassign;

TEST_CASE("single track: the optimal start is always rank one") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    for (std::size_t iters : {1u, 10u, 100u}) {
      const auto s = gibbs_sample(testing::single_example(), {iters, seed, 1});
      REQUIRE(s.size() == 1);
      CHECK(s[0].cost == 2.0);
      CHECK(s[0].columns == Columns{0});
    }
  }
}

TEST_CASE("small example: chain reaches every valid assignment") {
  const auto s = gibbs_sample(testing::small_example(), {1000, 7, 3});
  CHECK(s.costs() == std::vector<double>{4.0, 6.0, 7.0});
  CHECK(s.assignments == enumerate_assignments(testing::small_example(), 3).assignments);
}

TEST_CASE("invalid configuration is rejected") {
  CHECK_THROWS_AS((void)gibbs_sample(testing::small_example(), {0, 1, 1}), Error);
  CHECK_THROWS_AS((void)gibbs_sample(testing::small_example(), {1, 1, 0}), Error);
}

TEST_CASE("outputs are valid, ranked, optimal at rank one and deterministic") {
  std::mt19937_64 rng(3);
  testing::RandomInstance gen;
  gen.max_tracks = 8;
  gen.max_measurements = 8;
  for (int trial = 0; trial < 150; ++trial) {
    gen.integer_costs = trial % 2 == 1;
    const auto c = gen(rng);
    const GibbsConfig cfg{50, static_cast<std::uint64_t>(trial), 10};
    const auto s = gibbs_sample(c, cfg);
    CHECK(check_ranked_solution(c, s));
    REQUIRE_FALSE(s.empty());
    CHECK(s[0].cost == solve_linear(c)->cost);
    CHECK(gibbs_sample(c, cfg).assignments == s.assignments);
  }
}

TEST_CASE("every sampled assignment appears in the full enumeration") {
  std::mt19937_64 rng(8);
  testing::RandomInstance gen;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = gen(rng);
    const auto all = enumerate_assignments(c, 1'000'000);
    for (const auto& a : gibbs_sample(c, {20, 1, 25}).assignments) {
      CHECK(std::find(all.assignments.begin(), all.assignments.end(), a) != all.assignments.end());
    }
  }
}

TEST_CASE("long chains converge to the exact top-k on small instances") {
  std::mt19937_64 rng(21);
  testing::RandomInstance gen;
  gen.max_tracks = 4;
  gen.max_measurements = 4;
  int matched = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    const auto c = gen(rng);
    const std::size_t k = 4;
    const auto s = gibbs_sample(c, {10'000, static_cast<std::uint64_t>(trial), k});
    matched += s.assignments == enumerate_assignments(c, k).assignments ? 1 : 0;
  }
  CHECK(matched >= trials - 1);
}
