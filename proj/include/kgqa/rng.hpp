#pragma once

#include <cstdint>

namespace kgqa {

// SplitMix64 (Steele, Lea & Flood 2014). Small, fully specified, and cheap to
// fork into independent streams, so results do not depend on platform or on
// how work is scheduled.
struct RngState {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }
};

inline std::uint64_t mix64(std::uint64_t x) {
  RngState s{x};
  return s.next();
}

// Stream `index` derived from `seed`; streams for different indices are
// independent of each other and of how many are drawn.
inline RngState stream(std::uint64_t seed, std::uint64_t index) {
  return RngState{mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ULL))};
}

}  // namespace kgqa
