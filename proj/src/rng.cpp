#include "rankassign/rng.hpp"

#include <cmath>
#include <numbers>

namespace rankassign {

double standard_normal(Engine& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

unsigned poisson(Engine& rng, double mean) {
  const double limit = std::exp(-mean);
  unsigned k = 0;
  double prod = uniform01(rng);
  while (prod > limit) {
    ++k;
    prod *= uniform01(rng);
  }
  return k;
}

std::uint64_t uniform_int(Engine& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % range);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + x % range;
}

}  // namespace rankassign
