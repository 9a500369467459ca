#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace d2dee {

// Stateless 64-bit mixer used for counter-based stream splitting.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard,
// and the uniform conversion below avoids the implementation-defined
// std::uniform_real_distribution, so streams are reproducible across
// platforms and thread counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Independent substream keyed by (master seed, index). Trials drawn from
  // substreams cannot be reordered by parallel execution.
  static Rng substream(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(master ^ splitmix64(index + 0x51ed2701a9e3cc71ULL)));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential with unit mean; used for |h|^2 of a CN(0,1) coefficient.
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace d2dee
