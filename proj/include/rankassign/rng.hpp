#pragma once

#include <cstdint>
#include <random>

namespace rankassign {

/// All randomness goes through std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. The std:: distributions are implementation-defined,
/// so the helpers below derive variates directly from the raw 64-bit stream.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent seeds for sub-streams.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for stream (a, b) under a master seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                                  std::uint64_t b = 0) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b + 0x632BE59BD9B4E019ull));
}

/// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (one variate per call).
[[nodiscard]] double standard_normal(Engine& rng);

/// Poisson variate by Knuth's product method; fine for small means.
[[nodiscard]] unsigned poisson(Engine& rng, double mean);

/// Uniform integer in [lo, hi] by rejection on the raw stream.
[[nodiscard]] std::uint64_t uniform_int(Engine& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace rankassign
