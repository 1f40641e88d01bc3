#pragma once

// Turnstile stream primitives and exact reference computations.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace bms {

using Item = std::uint64_t;

/// Invalid parameters or parameter combinations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside the domain an operation is defined on (e.g. item > n).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A player broke the round protocol of the game.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One turnstile event: add `delta` (+1 or -1) to the frequency of `item`.
struct Update {
  Item item = 1;
  int delta = 1;

  friend bool operator==(const Update&, const Update&) = default;
};

/// Throws DomainError unless 1 <= u.item <= n and u.delta is +1 or -1.
void check_update(const Update& u, Item n);

/// Sparse frequency vector over the universe [1, n].
///
/// Entries that reach zero are removed, so `density()` is the number of
/// stored entries. Running sums of |v_i| and v_i^2 are kept exactly so the
/// first two moments are O(1) to read.
class FrequencyVector {
 public:
  explicit FrequencyVector(Item n);

  Item universe() const noexcept { return n_; }
  std::int64_t operator[](Item i) const;
  std::size_t density() const noexcept { return entries_.size(); }
  std::uint64_t updates_applied() const noexcept { return updates_; }
  std::int64_t sum_abs() const noexcept { return sum_abs_; }
  std::int64_t sum_squares() const noexcept { return sum_sq_; }
  const std::unordered_map<Item, std::int64_t>& entries() const noexcept {
    return entries_;
  }

  /// In-place update; throws DomainError for an out-of-range item.
  void apply(const Update& u);

  /// Vectors are equal when they have the same universe and entries.
  friend bool operator==(const FrequencyVector& a, const FrequencyVector& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  Item n_;
  std::unordered_map<Item, std::int64_t> entries_;
  std::uint64_t updates_ = 0;
  std::int64_t sum_abs_ = 0;
  std::int64_t sum_sq_ = 0;
};

FrequencyVector apply_update(FrequencyVector v, const Update& u);

/// Sum over entries of |v_i|^p for p in {1, 2}; DomainError for other p.
double exact_moment(const FrequencyVector& v, int p);

std::size_t density(const FrequencyVector& v);

/// One-sided multiplicative check x <= y < (1 + eps) x. For x = 0 only
/// y = 0 is accepted.
bool is_correct_estimate(double truth, double estimate, double epsilon);

/// Length of the longest index chain i_1 < ... < i_k whose consecutive
/// values satisfy y[i_{j-1}] outside [(1-eps) y[i_j], (1+eps) y[i_j]]
/// (closed interval). Exact, O(L log L). Returns 0 for an empty sequence.
std::size_t flip_number(std::span<const double> seq, double epsilon);

/// Parameters of an (f, eps)-estimation problem whose f ranges over
/// {0} U [1, alpha] on streams of at most m updates.
struct ApproxSpec {
  double epsilon = 0.5;
  double alpha = 2.0;
  std::uint64_t m = 1;

  /// Throws ConfigError unless eps in (0,1], alpha >= 2, m >= 1.
  void validate() const;
};

/// Ceiling that snaps values within 1e-9 (relative) of an integer to that
/// integer, so 20 / 0.1^2 and pow(1e5, 0.4) land on 2000 and 100.
std::uint64_t stable_ceil(double x);

/// stable_ceil(base^exponent); the rounding used for every m^c threshold.
std::uint64_t ceil_power(double base, double exponent);

}  // namespace bms
