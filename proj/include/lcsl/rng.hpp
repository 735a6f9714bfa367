#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lcsl {

// Counter-based splitmix64. The k-th output (k = 1, 2, ...) for a seed is
// mix64(seed + k * kGoldenGamma), which reproduces the canonical splitmix64
// stream for that seed; draws are a pure function of (seed, counter), so any
// stream can be replayed or forked without shared state.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream derivation rule: child(seed, key) = mix64(seed ^ mix64(key + gamma)).
/// Distinct keys give statistically independent child streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  return mix64(seed ^ mix64(key + kGoldenGamma));
}

class CounterRng {
 public:
  CounterRng() = default;
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return mix64(seed_ + (++counter_) * kGoldenGamma); }

  /// Uniform draw on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller, cosine branch; consumes exactly two
  /// uniforms per draw (the sine companion is discarded).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Child stream for the given key; independent of this stream's position.
  CounterRng derive(std::uint64_t key) const {
    return CounterRng(derive_seed(seed_, key));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_{0};
  std::uint64_t counter_{0};
};

}  // namespace lcsl
