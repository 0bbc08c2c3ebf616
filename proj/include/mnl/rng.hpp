#pragma once

#include <cmath>
#include <cstdint>

namespace mnl {

// SplitMix64 (Steele/Lea/Vigna). The state is a plain counter advanced by a
// fixed increment; each output is a finalizer hash of the counter, which makes
// independent substreams cheap: hash (seed, index) and seed a new generator.
// Unlike the std <random> distributions, everything here is bit-reproducible
// across platforms; seeded experiments depend on that.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed for the index-th substream of a master seed. Distinct indices land in
// unrelated regions of the SplitMix64 counter sequence.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + 0x9e3779b97f4a7c15ull * (index + 1));
}

// Standard normal via Box-Muller (one value per call; the cosine twin is
// discarded so the draw count stays fixed at two uniforms).
inline double standard_normal(SplitMix64& rng) {
  double u1 = 1.0 - rng.uniform();  // (0, 1], keeps log() finite
  double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace mnl
