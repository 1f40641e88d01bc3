#pragma once

// Seeded mixing, counter-mode randomness, and the 4-wise independent sign
// family used by the F2 sketches.

#include <array>
#include <cstdint>

namespace bms::hashing {

/// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent sub-seed of `seed` for a fixed label.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
  return mix64(seed ^ mix64(label));
}

/// Stateless counter-mode generator: value(i) depends only on (key, i).
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(key_ + counter * 0xD1B54A32D192ED03ULL);
  }

 private:
  std::uint64_t key_;
};

__extension__ using u128 = unsigned __int128;

inline constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

/// a * b mod 2^61 - 1 for a, b < 2^61 - 1.
inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) noexcept {
  const u128 prod = static_cast<u128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(prod) & kMersenne61) +
                    static_cast<std::uint64_t>(prod >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

/// Degree-3 polynomial over GF(2^61 - 1): a 4-wise independent family when
/// the coefficients are uniform. The sign is the parity of the hash value.
struct PolyHash4 {
  std::array<std::uint64_t, 4> coeff{};

  /// x, x^2, x^3 mod p, for evaluating many hashes at one point.
  struct Powers {
    std::uint64_t x1, x2, x3;
  };
  static Powers powers_of(std::uint64_t x) noexcept {
    x %= kMersenne61;
    const std::uint64_t x2 = mulmod61(x, x);
    return {x, x2, mulmod61(x2, x)};
  }

  /// Same value as (*this)(x); the three products are independent, which
  /// pipelines better than Horner's chain.
  std::uint64_t at(const Powers& p) const noexcept {
    // Each term is below 2^61, so the sum stays below 2^63.
    std::uint64_t s = coeff[0] + mulmod61(coeff[1], p.x1) + mulmod61(coeff[2], p.x2) +
                      mulmod61(coeff[3], p.x3);
    s = (s & kMersenne61) + (s >> 61);
    return s >= kMersenne61 ? s - kMersenne61 : s;
  }

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    x %= kMersenne61;
    std::uint64_t h = coeff[3];
    h = mulmod61(h, x) + coeff[2];
    h = mulmod61(h >= kMersenne61 ? h - kMersenne61 : h, x) + coeff[1];
    h = mulmod61(h >= kMersenne61 ? h - kMersenne61 : h, x) + coeff[0];
    return h >= kMersenne61 ? h - kMersenne61 : h;
  }

  int sign(std::uint64_t x) const noexcept { return ((*this)(x) & 1U) ? -1 : 1; }
};

/// The `index`-th hash of the family keyed by `seed`. Coefficients come from
/// a counter-mode stream, so any hash can be rebuilt without storing it.
PolyHash4 derive_poly_hash(std::uint64_t seed, std::uint64_t index) noexcept;

/// Same as derive_poly_hash(seed, index) for a generator built from `seed`.
PolyHash4 derive_poly_hash(const CounterRng& rng, std::uint64_t index) noexcept;

}  // namespace bms::hashing
