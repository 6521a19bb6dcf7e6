#pragma once

#include <cstdint>

namespace colorsim {

// All randomness in the simulator flows through these helpers so that runs
// are bit-reproducible from a single master seed, independent of the
// standard library implementation.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_keys(mix_keys(a, b), c);
}

/// Sequential PRNG stream.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n), n >= 1. Fixed-point multiply keeps the
  /// mapping deterministic and branch-free; the bias is O(n / 2^64).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

/// Counter-addressable random word, used as the per-vertex infinite tape:
/// word(master, vertex, idx) is a pure function, so any prefix can be
/// re-materialized without storing it.
inline std::uint64_t tape_word(std::uint64_t master_seed, std::uint32_t vertex,
                               std::uint64_t idx) {
  return splitmix64(mix_keys(master_seed, vertex) ^
                    splitmix64(idx * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

inline std::uint64_t word_below(std::uint64_t word, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(word) * n) >> 64);
}

}  // namespace colorsim
