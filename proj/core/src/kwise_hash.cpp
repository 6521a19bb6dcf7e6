#include "colorsim/kwise_hash.hpp"

#include <bit>
#include <string>

#include "colorsim/errors.hpp"

namespace colorsim {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = std::countr_zero(d);
  d >>= r;
  // This witness set decides primality exactly for all n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_u64(std::uint64_t n) {
  if (n <= 2) return 2;
  if (n % 2 == 0) ++n;
  while (!is_prime_u64(n)) n += 2;
  return n;
}

std::uint64_t KWiseSeed::seed_bits() const {
  std::uint64_t per = std::bit_width(modulus);
  return per * coefficients.size();
}

nlohmann::ordered_json KWiseSeed::to_json() const {
  nlohmann::ordered_json j;
  j["modulus"] = modulus;
  j["k"] = independence();
  j["coefficients"] = coefficients;
  return j;
}

KWiseSeed KWiseSeed::from_json(const nlohmann::ordered_json& j) {
  KWiseSeed s;
  s.modulus = j.at("modulus").get<std::uint64_t>();
  s.coefficients = j.at("coefficients").get<std::vector<std::uint64_t>>();
  if (s.coefficients.size() != j.at("k").get<std::size_t>()) {
    throw ParseError("kwise seed: coefficient count does not match k");
  }
  return s;
}

std::uint64_t kwise_raw(const KWiseSeed& seed, std::uint64_t key) {
  if (key >= seed.modulus) {
    throw ConfigError("kwise_eval: key " + std::to_string(key) +
                      " >= modulus " + std::to_string(seed.modulus));
  }
  // Horner.
  std::uint64_t acc = 0;
  for (auto it = seed.coefficients.rbegin(); it != seed.coefficients.rend();
       ++it) {
    acc = (mulmod(acc, key, seed.modulus) + *it) % seed.modulus;
  }
  return acc;
}

std::uint64_t kwise_eval(const KWiseSeed& seed, std::uint64_t key,
                         std::uint64_t parts) {
  if (parts == 0) throw ConfigError("kwise_eval: parts must be >= 1");
  return kwise_raw(seed, key) % parts;
}

KWiseSeed sample_seed(std::uint32_t k, std::uint64_t modulus, SplitMix64& rng) {
  if (k < 1) throw ConfigError("sample_seed: K must be >= 1");
  if (!is_prime_u64(modulus)) {
    throw ConfigError("sample_seed: modulus " + std::to_string(modulus) +
                      " is not prime");
  }
  KWiseSeed seed;
  seed.modulus = modulus;
  seed.coefficients.resize(k);
  for (auto& c : seed.coefficients) {
    // Rejection keeps coefficients exactly uniform over the field.
    std::uint64_t bound = UINT64_MAX - UINT64_MAX % modulus;
    std::uint64_t w;
    do {
      w = rng.next();
    } while (w >= bound);
    c = w % modulus;
  }
  return seed;
}

}  // namespace colorsim
