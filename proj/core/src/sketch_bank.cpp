#include "bms/sketch_bank.hpp"

#include <algorithm>
#include <bit>

#include "bms/hashing.hpp"
#include "bms/oblivious.hpp"

namespace bms {

SketchBank::SketchBank(double epsilon_in, std::vector<std::uint64_t> seeds,
                       std::size_t sparse_capacity)
    : epsilon_in_(epsilon_in),
      buckets_(bucket_count_for(epsilon_in)),
      words_((buckets_ + 63) / 64),
      seeds_(std::move(seeds)),
      sum_sq_(seeds_.size(), 0),
      capacity_(sparse_capacity) {
  if (seeds_.empty()) throw ConfigError("sketch bank needs at least one copy");
  if (copies() * buckets_ <= kHashCacheLimit) {
    hash_cache_.reserve(copies() * buckets_);
    for (std::size_t c = 0; c < copies(); ++c) {
      const hashing::CounterRng rng(seeds_[c]);
      for (std::size_t b = 0; b < buckets_; ++b) {
        hash_cache_.push_back(hashing::derive_poly_hash(rng, b));
      }
    }
  }
  if (capacity_ == 0) {
    dense_ = true;
    acc_.assign(copies() * buckets_, 0);
  } else {
    slots_.resize(capacity_);
    gram_.resize(capacity_ * capacity_);
    for (std::size_t s = capacity_; s-- > 0;) free_.push_back(s);
  }
}

void SketchBank::signature_of(Item item, std::span<std::uint64_t> out) const {
  std::fill(out.begin(), out.end(), 0);
  const auto powers = hashing::PolyHash4::powers_of(item);
  if (!hash_cache_.empty()) {
    for (std::size_t c = 0; c < copies(); ++c) {
      const hashing::PolyHash4* hashes = hash_cache_.data() + c * buckets_;
      std::uint64_t* words = out.data() + c * words_;
      for (std::size_t b = 0; b < buckets_; ++b) {
        words[b / 64] |= (hashes[b].at(powers) & 1U) << (b % 64);
      }
    }
    return;
  }
  for (std::size_t c = 0; c < copies(); ++c) {
    const hashing::CounterRng rng(seeds_[c]);
    std::uint64_t* words = out.data() + c * words_;
    for (std::size_t b = 0; b < buckets_; ++b) {
      const std::uint64_t bit = hashing::derive_poly_hash(rng, b).at(powers) & 1U;
      words[b / 64] |= bit << (b % 64);
    }
  }
}

std::vector<std::int32_t>& SketchBank::gram(std::size_t a, std::size_t b) {
  return gram_[a * capacity_ + b];
}

void SketchBank::admit(Item item, std::size_t slot) {
  Slot& s = slots_[slot];
  s.item = item;
  s.frequency = 0;
  s.signature.resize(copies() * words_);
  signature_of(item, s.signature);
  s.inner.assign(copies(), 0);

  const auto buckets = static_cast<std::int32_t>(buckets_);
  for (std::size_t other : live_) {
    const Slot& o = slots_[other];
    auto& g = gram(slot, other);
    g.resize(copies());
    for (std::size_t c = 0; c < copies(); ++c) {
      int differing = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        differing += std::popcount(s.signature[c * words_ + w] ^ o.signature[c * words_ + w]);
      }
      g[c] = buckets - 2 * differing;
    }
    gram(other, slot) = g;
    for (std::size_t c = 0; c < copies(); ++c) s.inner[c] += o.frequency * g[c];
  }
  live_.push_back(slot);
  slot_of_.emplace(item, slot);
}

void SketchBank::sparse_update(std::size_t slot, int delta) {
  Slot& s = slots_[slot];
  const auto buckets = static_cast<std::int64_t>(buckets_);
  for (std::size_t c = 0; c < copies(); ++c) {
    sum_sq_[c] += 2 * delta * s.inner[c] + buckets;
  }
  for (std::size_t other : live_) {
    auto& inner = slots_[other].inner;
    if (other == slot) {
      for (auto& h : inner) h += delta * buckets;
      continue;
    }
    const auto& g = gram(slot, other);
    for (std::size_t c = 0; c < copies(); ++c) inner[c] += delta * g[c];
  }
  s.frequency += delta;
  if (s.frequency == 0) {
    slot_of_.erase(s.item);
    live_.erase(std::find(live_.begin(), live_.end(), slot));
    free_.push_back(slot);
  }
}

void SketchBank::go_dense() {
  acc_.assign(copies() * buckets_, 0);
  for (std::size_t slot : live_) {
    const Slot& s = slots_[slot];
    for (std::size_t c = 0; c < copies(); ++c) {
      std::int64_t* acc = acc_.data() + c * buckets_;
      const std::uint64_t* words = s.signature.data() + c * words_;
      for (std::size_t b = 0; b < buckets_; ++b) {
        const bool negative = (words[b / 64] >> (b % 64)) & 1U;
        acc[b] += negative ? -s.frequency : s.frequency;
      }
    }
  }
  dense_ = true;
  slots_.clear();
  slots_.shrink_to_fit();
  gram_.clear();
  gram_.shrink_to_fit();
  live_.clear();
  free_.clear();
  slot_of_.clear();
}

void SketchBank::dense_update(const Update& u) {
  scratch_sig_.resize(copies() * words_);
  signature_of(u.item, scratch_sig_);
  const auto buckets = static_cast<std::int64_t>(buckets_);
  for (std::size_t c = 0; c < copies(); ++c) {
    std::int64_t* acc = acc_.data() + c * buckets_;
    const std::uint64_t* words = scratch_sig_.data() + c * words_;
    std::int64_t dot = 0;
    for (std::size_t b = 0; b < buckets_; ++b) {
      const std::int64_t g = ((words[b / 64] >> (b % 64)) & 1U) ? -1 : 1;
      dot += g * acc[b];
      acc[b] += g * u.delta;
    }
    sum_sq_[c] += 2 * u.delta * dot + buckets;
  }
}

void SketchBank::update(const Update& u) {
  if (!dense_) {
    auto it = slot_of_.find(u.item);
    if (it != slot_of_.end()) {
      sparse_update(it->second, u.delta);
      return;
    }
    if (!free_.empty()) {
      const std::size_t slot = free_.back();
      free_.pop_back();
      admit(u.item, slot);
      sparse_update(slot, u.delta);
      return;
    }
    go_dense();
  }
  dense_update(u);
}

double SketchBank::estimate(std::size_t copy) const noexcept {
  return one_sided_estimate(sum_sq_[copy], buckets_, epsilon_in_);
}

double SketchBank::median_estimate() const {
  scratch_est_.resize(copies());
  for (std::size_t c = 0; c < copies(); ++c) scratch_est_[c] = estimate(c);
  return median_in_place(scratch_est_);
}

}  // namespace bms
