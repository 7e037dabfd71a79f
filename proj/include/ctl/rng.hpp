#pragma once

// Platform-independent pseudo-random streams.
//
// Xorshift64Star (Vigna's xorshift64*):
//   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  return x * 0x2545F4914F6CDD1D;
// The state must be non-zero; a zero seed is replaced by 0x9E3779B97F4A7C15.
//
// Per-sample streams: sample k of a run with seed s uses the state
//   splitmix64(s ^ splitmix64(k + 1)),
// so results do not depend on how samples are split across workers.

#include <cstdint>

namespace ctl {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Xorshift64Star {
 public:
  explicit constexpr Xorshift64Star(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  constexpr std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform in [0, bound); modulo reduction (the bias is irrelevant at catalog sizes).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t sample_stream_seed(std::uint64_t seed, std::uint64_t sample) {
  return splitmix64(seed ^ splitmix64(sample + 1));
}

}  // namespace ctl
