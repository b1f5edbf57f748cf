#pragma once

// Every random draw in the project goes through this wrapper around
// std::mt19937_64 (Matsumoto-Nishimura 64-bit Mersenne Twister, fully
// specified by the standard). The conversions below are written out instead
// of using <random> distributions, whose algorithms are implementation
// defined, so a seed reproduces the same stream on every platform.

#include <cstdint>
#include <random>

#include "halfhc/bitstream.hpp"

namespace halfhc {

class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bit() { return (engine_() >> 63) != 0; }

private:
  std::mt19937_64 engine_;
};

/// n iid fair bits.
inline BitStream fair_bits(std::uint64_t n, Rng& rng) {
  BitStream out;
  std::uint64_t word = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng.next();
    out.push_back((word >> 63) != 0);
    word <<= 1;
  }
  return out;
}

}  // namespace halfhc
