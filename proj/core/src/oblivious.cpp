#include "bms/oblivious.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace bms {

std::size_t bucket_count_for(double epsilon_in) {
  if (!(epsilon_in > 0.0 && epsilon_in < 1.0)) {
    throw ConfigError(fmt::format("sketch error {} outside (0, 1)", epsilon_in));
  }
  return static_cast<std::size_t>(stable_ceil(20.0 / (epsilon_in * epsilon_in)));
}

SketchState::SketchState(double epsilon_in, std::uint64_t seed)
    : config_{epsilon_in, bucket_count_for(epsilon_in), seed} {
  hashes_.reserve(config_.bucket_count);
  for (std::size_t b = 0; b < config_.bucket_count; ++b) {
    hashes_.push_back(hashing::derive_poly_hash(seed, b));
  }
  acc_.assign(config_.bucket_count, 0);
}

void SketchState::update(const Update& u) noexcept {
  for (std::size_t b = 0; b < acc_.size(); ++b) {
    acc_[b] += hashes_[b].sign(u.item) * u.delta;
  }
}

std::int64_t SketchState::sum_of_squares() const noexcept {
  std::int64_t total = 0;
  for (std::int64_t a : acc_) total += a * a;
  return total;
}

double SketchState::raw_estimate() const noexcept {
  return static_cast<double>(sum_of_squares()) / static_cast<double>(config_.bucket_count);
}

double SketchState::estimate() const noexcept {
  return one_sided_estimate(sum_of_squares(), config_.bucket_count, config_.epsilon_in);
}

double one_sided_estimate(std::int64_t sum_of_squares, std::size_t bucket_count,
                          double epsilon_in) noexcept {
  const double mean = static_cast<double>(sum_of_squares) / static_cast<double>(bucket_count);
  return mean / (1.0 - epsilon_in);
}

SketchState sketch_init(double epsilon_in, std::uint64_t seed) {
  return SketchState(epsilon_in, seed);
}

SketchState sketch_update(SketchState s, const Update& u) {
  s.update(u);
  return s;
}

double sketch_estimate(const SketchState& s) { return s.estimate(); }

std::size_t amplification_copies(double delta) {
  if (!(delta > 0.0 && delta < 0.1)) {
    throw ConfigError(fmt::format("amplification failure probability {} outside (0, 1/10)", delta));
  }
  return static_cast<std::size_t>(stable_ceil(12.0 * std::log(1.0 / delta)));
}

double median_in_place(std::span<double> scratch) {
  if (scratch.empty()) throw DomainError("median of an empty list");
  const auto mid = scratch.begin() + static_cast<std::ptrdiff_t>((scratch.size() - 1) / 2);
  std::nth_element(scratch.begin(), mid, scratch.end());
  return *mid;
}

double median_amplify(std::span<const double> estimates) {
  std::vector<double> scratch(estimates.begin(), estimates.end());
  return median_in_place(scratch);
}

}  // namespace bms
