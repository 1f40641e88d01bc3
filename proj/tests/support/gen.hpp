#pragma once

// Small deterministic generators for property tests.

#include <cstdint>
#include <vector>

#include "bms/core.hpp"
#include "bms/hashing.hpp"

namespace bms::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_.at(counter_++); }
  /// Uniform on [lo, hi]; the modulo bias is irrelevant at test sizes.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() & 1U) != 0; }

  std::vector<Update> turnstile(std::size_t length, Item n) {
    std::vector<Update> out;
    for (std::size_t i = 0; i < length; ++i) {
      out.push_back(Update{range(1, n), coin() ? +1 : -1});
    }
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[range(0, i - 1)]);
  }

 private:
  hashing::CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace bms::testing
