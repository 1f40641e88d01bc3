#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bms/core.hpp"
#include "bms/hashing.hpp"

namespace bms {

/// t independent F2 sketches sharing epsilon_in, each behaving exactly like a
/// SketchState built from its seed: per-copy sums of squares (and therefore
/// estimates) are bit-identical to the literal accumulator arrays.
///
/// While at most `sparse_capacity` items have nonzero frequency, the bank
/// keeps, per copy, the sum of squares Q and the inner products
/// h_j = <g(j), acc> for each live item j, plus the pairwise sign
/// correlations G_ij = <g(i), g(j)> taken from bit-packed sign signatures.
/// An update to item i then costs O(t * live) instead of O(t * buckets):
///   Q += 2 delta h_i + buckets,  h_j += delta G_ij.
/// Past the capacity the bank materialises the accumulators and continues
/// with literal O(t * buckets) updates.
class SketchBank {
 public:
  static constexpr std::size_t kDefaultSparseCapacity = 64;
  /// Banks with at most this many (copy, bucket) hashes keep the hash
  /// coefficients in memory instead of re-deriving them per new item.
  static constexpr std::size_t kHashCacheLimit = std::size_t{1} << 24;

  SketchBank(double epsilon_in, std::vector<std::uint64_t> seeds,
             std::size_t sparse_capacity = kDefaultSparseCapacity);

  std::size_t copies() const noexcept { return seeds_.size(); }
  std::size_t bucket_count() const noexcept { return buckets_; }
  double epsilon_in() const noexcept { return epsilon_in_; }
  std::span<const std::uint64_t> seeds() const noexcept { return seeds_; }
  bool dense() const noexcept { return dense_; }

  void update(const Update& u);

  std::span<const std::int64_t> sums_of_squares() const noexcept { return sum_sq_; }
  double estimate(std::size_t copy) const noexcept;

  /// Lower median of the per-copy one-sided estimates.
  double median_estimate() const;

 private:
  struct Slot {
    Item item = 0;
    std::int64_t frequency = 0;
    std::vector<std::uint64_t> signature;  // copies * words_ bits, 1 = sign -1
    std::vector<std::int64_t> inner;       // h per copy
  };

  void signature_of(Item item, std::span<std::uint64_t> out) const;
  std::vector<std::int32_t>& gram(std::size_t a, std::size_t b);
  void admit(Item item, std::size_t slot);
  void sparse_update(std::size_t slot, int delta);
  void go_dense();
  void dense_update(const Update& u);

  double epsilon_in_;
  std::size_t buckets_;
  std::size_t words_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::int64_t> sum_sq_;
  std::vector<hashing::PolyHash4> hash_cache_;  // copies * buckets, or empty

  bool dense_ = false;
  std::size_t capacity_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> live_;
  std::vector<std::size_t> free_;
  std::unordered_map<Item, std::size_t> slot_of_;
  std::vector<std::vector<std::int32_t>> gram_;  // capacity * capacity pairs, lazily sized

  std::vector<std::int64_t> acc_;            // dense mode: copies * buckets
  std::vector<std::uint64_t> scratch_sig_;   // dense mode signature buffer
  mutable std::vector<double> scratch_est_;
};

}  // namespace bms
