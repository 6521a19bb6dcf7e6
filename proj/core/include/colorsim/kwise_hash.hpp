#pragma once

#include <cstdint>
#include <vector>

#include "colorsim/rng.hpp"

#include <json.hpp>

namespace colorsim {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Smallest prime >= n (n <= 2^63).
std::uint64_t next_prime_u64(std::uint64_t n);

/// Seed of a K-wise independent hash family: K coefficients of a random
/// polynomial of degree K-1 over the prime field Z_modulus. The whole seed
/// is K field elements, short enough to broadcast.
struct KWiseSeed {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> coefficients;  // c0 + c1*x + ... degree K-1

  std::uint32_t independence() const {
    return static_cast<std::uint32_t>(coefficients.size());
  }
  std::uint64_t seed_bits() const;

  nlohmann::ordered_json to_json() const;
  static KWiseSeed from_json(const nlohmann::ordered_json& j);
};

/// Raw polynomial evaluation at `key` over the field; exactly K-wise
/// uniform over random seeds for any K distinct keys.
std::uint64_t kwise_raw(const KWiseSeed& seed, std::uint64_t key);

/// Part index in [0, parts): polynomial value reduced mod parts. Throws on
/// key >= modulus.
std::uint64_t kwise_eval(const KWiseSeed& seed, std::uint64_t key,
                         std::uint64_t parts);

/// Coefficients i.i.d. uniform over the field; deterministic given rng
/// state. Rejects non-prime moduli and K < 1.
KWiseSeed sample_seed(std::uint32_t k, std::uint64_t modulus, SplitMix64& rng);

}  // namespace colorsim
