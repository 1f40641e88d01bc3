#include "bms/hashing.hpp"

namespace bms::hashing {

PolyHash4 derive_poly_hash(const CounterRng& rng, std::uint64_t index) noexcept {
  PolyHash4 h;
  for (std::uint64_t j = 0; j < 4; ++j) {
    // Top 61 bits are uniform on [0, 2^61); fold the single value 2^61 - 1.
    const std::uint64_t c = rng.at(4 * index + j) >> 3;
    h.coeff[j] = c == kMersenne61 ? 0 : c;
  }
  return h;
}

PolyHash4 derive_poly_hash(std::uint64_t seed, std::uint64_t index) noexcept {
  return derive_poly_hash(CounterRng(seed), index);
}

}  // namespace bms::hashing
