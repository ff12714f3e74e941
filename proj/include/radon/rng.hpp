#pragma once

#include <cmath>
#include <cstdint>

#include "radon/math_util.hpp"

namespace radon {

// SplitMix64 finalizer: a full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Counter-based generator: output i is a pure function of (seed, stream, i),
// so any sample can be produced in any order on any thread and the result is
// identical.  This is what makes reports byte-stable under parallelism.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed ^ mix64(stream * 0x9E3779B97F4A7C15ULL +
                                0xD1B54A32D192ED03ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + counter * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return double(bits(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  // Standard normal via Box-Muller; consumes uniforms 2*counter, 2*counter+1.
  double normal(std::uint64_t counter) const {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t key_;
};

// Seed derivation for per-sample streams: collision-resistant enough for
// harness families (distinct (seed, index) pairs map to distinct keys with
// overwhelming probability).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x51BDA2AD7C9B3A4FULL));
}

}  // namespace radon
