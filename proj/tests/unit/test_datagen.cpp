#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rankassign/datagen.hpp"
#include "rankassign/exact_solver.hpp"

using namespace rankassign;

TEST_CASE("vartheta 0 and 1") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig cfg;
    cfg.nu_s = 1 + seed % 6;
    cfg.seed = seed;
    cfg.vartheta = 0.0;
    const auto open = generate_instance(cfg).cost;
    for (std::size_t i = 0; i < open.num_tracks(); ++i) {
      for (std::size_t m = 0; m < open.num_measurements(); ++m) CHECK(std::isfinite(open.detected(i, m)));
    }
    cfg.vartheta = 1.0;
    const auto closed = generate_instance(cfg).cost;
    for (std::size_t i = 0; i < closed.num_tracks(); ++i) {
      for (std::size_t m = 0; m < closed.num_measurements(); ++m) CHECK(std::isinf(closed.detected(i, m)));
      CHECK(std::isfinite(closed.misdetect(i)));
    }
    const auto only = murty_k_best(closed, 10);
    REQUIRE(only.size() == 1);
    CHECK(only[0].columns == all_misdetected(closed));
  }
}

TEST_CASE("measurement count range") {
  for (std::size_t nu_s : {1u, 2u, 7u, 15u}) {
    std::size_t lo = 1000, hi = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      GenConfig cfg;
      cfg.nu_s = nu_s;
      cfg.seed = seed;
      cfg.vartheta = 0.3;
      const auto c = generate_instance(cfg).cost;
      CHECK(c.num_tracks() == nu_s);
      CHECK(c.num_columns() == c.num_measurements() + nu_s);
      lo = std::min(lo, c.num_measurements());
      hi = std::max(hi, c.num_measurements());
    }
    CHECK(lo == std::max<std::size_t>(1, nu_s - 1));
    CHECK(hi == nu_s + 4);
  }
}

TEST_CASE("requested k is Poisson(4) clamped at 1") {
  double sum = 0.0;
  std::size_t zeros_seen = 0;
  const int n = 10'000;
  for (int s = 0; s < n; ++s) {
    GenConfig cfg;
    cfg.seed = derive_seed(1234, static_cast<std::uint64_t>(s));
    const auto k = generate_instance(cfg).requested_k;
    CHECK(k >= 1);
    zeros_seen += k == 0;
    sum += static_cast<double>(k);
  }
  CHECK(zeros_seen == 0);
  // Clamping 0 -> 1 shifts the mean by P(0) = e^-4 ~ 0.018.
  CHECK(std::abs(sum / n - 4.0) <= 0.1);
}

TEST_CASE("gating rate tracks vartheta") {
  for (double vartheta : {0.2, 0.5, 0.8}) {
    std::size_t gated = 0, total = 0;
    for (std::uint64_t s = 0; total < 10'000; ++s) {
      GenConfig cfg;
      cfg.nu_s = 5;
      cfg.vartheta = vartheta;
      cfg.seed = derive_seed(77, s);
      const auto c = generate_instance(cfg).cost;
      for (std::size_t i = 0; i < c.num_tracks(); ++i) {
        for (std::size_t m = 0; m < c.num_measurements(); ++m) {
          gated += std::isinf(c.detected(i, m));
          ++total;
        }
      }
    }
    CHECK(std::abs(static_cast<double>(gated) / static_cast<double>(total) - vartheta) <= 0.02);
  }
}

TEST_CASE("mixture moments") {
  // Closed form for an equal-weight two-component mixture.
  const std::array<MixtureComponent, 2> mix{{{-2.5, 0.5}, {0.5, 1.5}}};
  const double mean = 0.5 * mix[0].mean + 0.5 * mix[1].mean;
  const double second = 0.5 * (mix[0].variance + mix[0].mean * mix[0].mean) +
                        0.5 * (mix[1].variance + mix[1].mean * mix[1].mean);
  const double variance = second - mean * mean;
  CHECK(mean == -1.0);
  CHECK(variance == doctest::Approx(3.25));

  Engine rng(5);
  const int n = 200'000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_mixture(rng, mix);
    s1 += x;
    s2 += x * x;
  }
  const double m = s1 / n;
  CHECK(std::abs(m - mean) <= 0.02);
  CHECK(std::abs(s2 / n - m * m - variance) <= 0.05);
}

TEST_CASE("generation is deterministic and valid") {
  GenConfig cfg;
  cfg.nu_s = 6;
  cfg.vartheta = 0.4;
  cfg.seed = 42;
  const auto a = generate_instance(cfg);
  const auto b = generate_instance(cfg);
  CHECK(a.cost == b.cost);
  CHECK(a.requested_k == b.requested_k);
  cfg.seed = 43;
  CHECK_FALSE(generate_instance(cfg).cost == a.cost);

  GenConfig bad;
  bad.vartheta = 1.5;
  CHECK_THROWS_AS((void)generate_instance(bad), Error);
  bad.vartheta = 0.5;
  bad.nu_s = 0;
  CHECK_THROWS_AS((void)generate_instance(bad), Error);
}

TEST_CASE("dataset grid") {
  const auto spec = DatasetSpec::grid(15, 9, 10, 3);
  CHECK(spec.nu_s_values.size() == 15);
  REQUIRE(spec.vartheta_values.size() == 9);
  CHECK(spec.vartheta_values.front() == doctest::Approx(0.1));
  CHECK(spec.vartheta_values.back() == doctest::Approx(0.9));

  auto small = DatasetSpec::grid(3, 9, 2, 3);
  small.k_max = 10;
  const auto entries = build_dataset(small);
  CHECK(entries.size() == 3 * 9 * 2);
  for (const auto& e : entries) {
    CHECK(e.cost.num_tracks() == e.nu_s);
    REQUIRE_FALSE(e.labels.empty());
    CHECK(e.labels.size() <= 10);
    const auto ref = murty_k_best(e.cost, 10);
    REQUIRE(ref.size() == e.labels.size());
    for (std::size_t r = 0; r < ref.size(); ++r) CHECK(ref[r].columns == e.labels[r]);
  }

  auto threaded = small;
  threaded.jobs = 3;
  const auto again = build_dataset(threaded);
  REQUIRE(again.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(again[i].id == entries[i].id);
    CHECK(again[i].cost == entries[i].cost);
    CHECK(again[i].requested_k == entries[i].requested_k);
  }
  CHECK(instance_id(3, 4, 7) == "n03_v04_00007");

  auto empty = small;
  empty.count = 0;
  CHECK_THROWS_AS((void)build_dataset(empty), Error);
}
