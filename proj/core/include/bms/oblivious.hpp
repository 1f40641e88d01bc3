#pragma once

// Order-invariant oblivious F2 estimation (tug-of-war / AMS mean of squares)
// and median amplification.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bms/core.hpp"
#include "bms/hashing.hpp"

namespace bms {

/// Buckets needed for a two-sided (1 +- eps_in) estimate with probability
/// at least 9/10 by Chebyshev: ceil(20 / eps_in^2).
std::size_t bucket_count_for(double epsilon_in);

struct SketchConfig {
  double epsilon_in = 0.5;
  std::size_t bucket_count = 80;
  std::uint64_t seed = 0;

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

/// Linear sketch: accumulator b holds sum_i g_b(i) * f_i with g_b a seeded
/// 4-wise independent sign. The state depends only on the frequency vector
/// and the seed, never on update order.
class SketchState {
 public:
  /// Throws ConfigError unless epsilon_in in (0, 1).
  SketchState(double epsilon_in, std::uint64_t seed);

  const SketchConfig& config() const noexcept { return config_; }
  std::span<const std::int64_t> accumulators() const noexcept { return acc_; }

  /// Sign g_b(item) of bucket b.
  int sign(std::size_t bucket, Item item) const noexcept { return hashes_[bucket].sign(item); }

  void update(const Update& u) noexcept;

  /// Sum of squared accumulators (exact).
  std::int64_t sum_of_squares() const noexcept;

  /// Two-sided mean of squares; unbiased for F2.
  double raw_estimate() const noexcept;

  /// raw / (1 - eps_in): one-sided whenever raw is within (1 +- eps_in) F2.
  double estimate() const noexcept;

  /// Same config and accumulators.
  friend bool operator==(const SketchState& a, const SketchState& b) {
    return a.config_ == b.config_ && a.acc_ == b.acc_;
  }

 private:
  SketchConfig config_;
  std::vector<hashing::PolyHash4> hashes_;
  std::vector<std::int64_t> acc_;
};

/// One-sided estimate from an exact sum of squares, shared by every sketch
/// representation so equal states give bit-identical estimates.
double one_sided_estimate(std::int64_t sum_of_squares, std::size_t bucket_count,
                          double epsilon_in) noexcept;

SketchState sketch_init(double epsilon_in, std::uint64_t seed);
SketchState sketch_update(SketchState s, const Update& u);
double sketch_estimate(const SketchState& s);

/// ceil(12 ln(1/delta)); ConfigError unless delta in (0, 1/10).
std::size_t amplification_copies(double delta);

/// Lower median: element ceil(len/2) - 1 of the sorted list. Throws
/// DomainError for an empty list.
double median_amplify(std::span<const double> estimates);

/// Same as median_amplify but reorders `scratch` in place instead of copying.
double median_in_place(std::span<double> scratch);

}  // namespace bms
