#include "bms/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <fmt/format.h>

namespace bms {

void check_update(const Update& u, Item n) {
  if (u.item < 1 || u.item > n) {
    throw DomainError(fmt::format("item {} outside universe [1, {}]", u.item, n));
  }
  if (u.delta != 1 && u.delta != -1) {
    throw DomainError(fmt::format("delta {} is not a unit update", u.delta));
  }
}

FrequencyVector::FrequencyVector(Item n) : n_(n) {
  if (n < 1) throw ConfigError("universe size n must be >= 1");
}

std::int64_t FrequencyVector::operator[](Item i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? 0 : it->second;
}

void FrequencyVector::apply(const Update& u) {
  check_update(u, n_);
  auto [it, inserted] = entries_.try_emplace(u.item, 0);
  const std::int64_t before = it->second;
  const std::int64_t after = before + u.delta;
  sum_abs_ += std::llabs(after) - std::llabs(before);
  sum_sq_ += after * after - before * before;
  if (after == 0) {
    entries_.erase(it);
  } else {
    it->second = after;
  }
  ++updates_;
}

FrequencyVector apply_update(FrequencyVector v, const Update& u) {
  v.apply(u);
  return v;
}

double exact_moment(const FrequencyVector& v, int p) {
  switch (p) {
    case 1:
      return static_cast<double>(v.sum_abs());
    case 2:
      return static_cast<double>(v.sum_squares());
    default:
      throw DomainError(fmt::format("moment exponent {} not supported", p));
  }
}

std::size_t density(const FrequencyVector& v) { return v.density(); }

bool is_correct_estimate(double truth, double estimate, double epsilon) {
  if (truth == 0.0) return estimate == 0.0;
  return truth <= estimate && estimate < (1.0 + epsilon) * truth;
}

namespace {

// Fenwick tree over positions 1..size holding running maxima.
class MaxFenwick {
 public:
  explicit MaxFenwick(std::size_t size) : tree_(size + 1, 0) {}

  void raise(std::size_t pos, std::size_t value) {
    for (++pos; pos < tree_.size(); pos += pos & (~pos + 1)) {
      tree_[pos] = std::max(tree_[pos], value);
    }
  }

  // Max over positions [0, count).
  std::size_t prefix_max(std::size_t count) const {
    std::size_t best = 0;
    for (; count > 0; count -= count & (~count + 1)) {
      best = std::max(best, tree_[count]);
    }
    return best;
  }

 private:
  std::vector<std::size_t> tree_;
};

}  // namespace

std::size_t flip_number(std::span<const double> seq, double epsilon) {
  if (seq.empty()) return 0;

  std::vector<double> values(seq.begin(), seq.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::size_t width = values.size();

  // below: indexed by value rank; above: indexed by reversed rank.
  MaxFenwick below(width);
  MaxFenwick above(width);
  std::size_t best = 0;
  for (double y : seq) {
    const double lo = (1.0 - epsilon) * y;
    const double hi = (1.0 + epsilon) * y;
    const auto n_lower = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), lo) - values.begin());
    const auto first_higher = static_cast<std::size_t>(
        std::upper_bound(values.begin(), values.end(), hi) - values.begin());
    const std::size_t chain =
        1 + std::max(below.prefix_max(n_lower), above.prefix_max(width - first_higher));

    const auto rank = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), y) - values.begin());
    below.raise(rank, chain);
    above.raise(width - 1 - rank, chain);
    best = std::max(best, chain);
  }
  return best;
}

void ApproxSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ConfigError(fmt::format("epsilon {} outside (0, 1]", epsilon));
  }
  if (!(alpha >= 2.0)) throw ConfigError(fmt::format("alpha {} < 2", alpha));
  if (m < 1) throw ConfigError("stream length m must be >= 1");
}

std::uint64_t stable_ceil(double x) {
  if (!(x > 0.0)) return 0;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

std::uint64_t ceil_power(double base, double exponent) {
  return stable_ceil(std::pow(base, exponent));
}

}  // namespace bms
