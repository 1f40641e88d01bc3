#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "bms/hashing.hpp"
#include "bms/oblivious.hpp"
#include "bms/sketch_bank.hpp"
#include "support/gen.hpp"

namespace bms {
namespace {

// Straight evaluation of sum_j a_j x^j mod p with 128-bit intermediates.
std::uint64_t poly_oracle(const hashing::PolyHash4& h, std::uint64_t x) {
  using hashing::u128;
  const u128 p = hashing::kMersenne61;
  const u128 xr = x % p;
  u128 power = 1, sum = 0;
  for (int j = 0; j < 4; ++j) {
    sum = (sum + h.coeff[j] % p * power) % p;
    power = power * xr % p;
  }
  return static_cast<std::uint64_t>(sum);
}

TEST(Hashing, PolyHashMatchesDirectEvaluation) {
  testing::Gen g(1);
  for (int trial = 0; trial < 200; ++trial) {
    const hashing::PolyHash4 h = hashing::derive_poly_hash(g.next(), g.range(0, 5000));
    for (int s = 0; s < 50; ++s) {
      const std::uint64_t x = s < 10 ? static_cast<std::uint64_t>(s) : g.next();
      ASSERT_EQ(h(x), poly_oracle(h, x));
    }
  }
}

TEST(Hashing, PowerFormMatchesHorner) {
  testing::Gen g(3);
  for (int trial = 0; trial < 20000; ++trial) {
    const auto h = hashing::derive_poly_hash(g.next(), 0);
    const std::uint64_t x = trial % 4 == 0 ? hashing::kMersenne61 - 1 - g.range(0, 3) : g.next();
    ASSERT_EQ(h.at(hashing::PolyHash4::powers_of(x)), h(x));
  }
}

TEST(SketchBank, UncachedHashesMatchCopies) {
  // 84 copies of 200000 buckets exceed the coefficient cache, so the bank
  // derives every hash on the fly.
  const double eps = 0.01;
  std::vector<std::uint64_t> seeds(84);
  std::iota(seeds.begin(), seeds.end(), 1);
  ASSERT_GT(seeds.size() * bucket_count_for(eps), SketchBank::kHashCacheLimit);
  SketchBank bank(eps, seeds);
  SketchState first = sketch_init(eps, seeds[0]);
  SketchState last = sketch_init(eps, seeds.back());
  for (const Update u : {Update{3, +1}, Update{9, +1}, Update{3, +1}, Update{9, -1}}) {
    bank.update(u);
    first.update(u);
    last.update(u);
  }
  EXPECT_EQ(bank.sums_of_squares().front(), first.sum_of_squares());
  EXPECT_EQ(bank.sums_of_squares().back(), last.sum_of_squares());
}

TEST(Hashing, CoefficientsBelowModulus) {
  testing::Gen g(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = hashing::derive_poly_hash(g.next(), trial);
    for (auto c : h.coeff) ASSERT_LT(c, hashing::kMersenne61);
  }
}

TEST(Hashing, MulMod) {
  using hashing::kMersenne61;
  EXPECT_EQ(hashing::mulmod61(kMersenne61 - 1, kMersenne61 - 1), 1u);
  EXPECT_EQ(hashing::mulmod61(0, 12345), 0u);
  EXPECT_EQ(hashing::mulmod61(1ULL << 60, 2), 1u);
}

TEST(Hashing, SignsAreBalanced) {
  // Across many seeds a fixed item's sign is a fair coin.
  int plus = 0;
  constexpr int kSeeds = 20000;
  for (int s = 0; s < kSeeds; ++s) plus += hashing::derive_poly_hash(s, 0).sign(42) > 0;
  EXPECT_NEAR(static_cast<double>(plus) / kSeeds, 0.5, 0.02);
}

TEST(SketchInit, BucketCounts) {
  const SketchState a = sketch_init(0.5, 9);
  EXPECT_EQ(a.config().bucket_count, 80u);
  for (auto acc : a.accumulators()) EXPECT_EQ(acc, 0);
  EXPECT_EQ(sketch_init(0.1, 9).config().bucket_count, 2000u);
  EXPECT_EQ(bucket_count_for(0.9 / 9), 2000u);
  EXPECT_THROW(sketch_init(0.0, 1), ConfigError);
  EXPECT_THROW(sketch_init(1.0, 1), ConfigError);
}

TEST(SketchInit, SameSeedSameHashes) {
  SketchState a = sketch_init(0.3, 77), b = sketch_init(0.3, 77);
  for (Item i = 1; i < 50; ++i) {
    a.update(Update{i, +1});
    b.update(Update{i, +1});
  }
  EXPECT_EQ(a, b);
  SketchState c = sketch_init(0.3, 78);
  for (Item i = 1; i < 50; ++i) c.update(Update{i, +1});
  EXPECT_FALSE(a == c);
}

TEST(SketchUpdate, InverseRestoresState) {
  const SketchState init = sketch_init(0.5, 3);
  SketchState s = sketch_update(init, Update{5, +1});
  s = sketch_update(s, Update{5, -1});
  EXPECT_EQ(s, init);
}

TEST(SketchUpdate, RepeatedInsertions) {
  SketchState s = sketch_init(0.5, 4);
  for (int i = 0; i < 7; ++i) s.update(Update{9, +1});
  for (std::size_t b = 0; b < s.config().bucket_count; ++b) {
    EXPECT_EQ(s.accumulators()[b], 7 * s.sign(b, 9));
  }
}

TEST(SketchEstimate, Examples) {
  SketchState s = sketch_init(0.5, 5);
  EXPECT_EQ(sketch_estimate(s), 0.0);
  s.update(Update{3, +1});
  EXPECT_EQ(s.raw_estimate(), 1.0);
  EXPECT_DOUBLE_EQ(sketch_estimate(s), 1.0 / (1.0 - 0.5));
}

TEST(SketchProperty, OrderInvariance) {
  testing::Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Update> stream = g.turnstile(g.range(1, 200), g.range(2, 40));
    const std::uint64_t seed = g.next();
    SketchState a = sketch_init(0.5, seed);
    for (const auto& u : stream) a.update(u);
    g.shuffle(stream);
    SketchState b = sketch_init(0.5, seed);
    for (const auto& u : stream) b.update(u);
    ASSERT_EQ(a, b);
  }
}

TEST(SketchProperty, LinearInFrequencies) {
  // Accumulator b equals sum_i g_b(i) f_i computed from the oracle vector.
  testing::Gen g(9);
  for (int trial = 0; trial < 30; ++trial) {
    SketchState s = sketch_init(0.4, g.next());
    std::map<Item, std::int64_t> f;
    for (const Update& u : g.turnstile(300, 25)) {
      s.update(u);
      f[u.item] += u.delta;
    }
    for (std::size_t b = 0; b < s.config().bucket_count; ++b) {
      std::int64_t expected = 0;
      for (auto [item, v] : f) expected += s.sign(b, item) * v;
      ASSERT_EQ(s.accumulators()[b], expected);
    }
  }
}

TEST(SketchProperty, EstimateIsOneSidedMostOfTheTime) {
  // Chebyshev gives >= 9/10 per seed; the empirical rate is far higher.
  testing::Gen g(10);
  int ok = 0;
  constexpr int kSeeds = 300;
  std::vector<Update> stream = g.turnstile(400, 60);
  FrequencyVector truth(60);
  for (const auto& u : stream) truth.apply(u);
  const double f2 = exact_moment(truth, 2);
  for (int s = 0; s < kSeeds; ++s) {
    SketchState sk = sketch_init(0.3, static_cast<std::uint64_t>(s));
    for (const auto& u : stream) sk.update(u);
    const double y = sk.estimate();
    ok += (f2 <= y && y <= f2 * (1.3 / 0.7)) ? 1 : 0;
  }
  EXPECT_GE(ok, kSeeds * 9 / 10);
}

TEST(Amplification, CopyCounts) {
  EXPECT_EQ(amplification_copies(0.05), 36u);
  EXPECT_EQ(amplification_copies(0.01), 56u);
  EXPECT_EQ(amplification_copies(0.099), 28u);
  EXPECT_THROW(amplification_copies(0.1), ConfigError);
  EXPECT_THROW(amplification_copies(0.0), ConfigError);
}

TEST(Amplification, LowerMedian) {
  EXPECT_EQ(median_amplify(std::vector<double>{5}), 5);
  EXPECT_EQ(median_amplify(std::vector<double>{1, 9, 5}), 5);
  EXPECT_EQ(median_amplify(std::vector<double>{1, 2, 8, 9}), 2);
  EXPECT_THROW(median_amplify(std::vector<double>{}), DomainError);
  std::vector<double> scratch{4, 3, 2, 1};
  EXPECT_EQ(median_in_place(scratch), 2);
}

// SketchBank must agree bit for bit with a plain list of SketchState copies,
// in the sparse Gram representation and after switching to dense counters.
void expect_bank_matches(std::size_t capacity, std::size_t length, Item n, std::uint64_t seed) {
  testing::Gen g(seed);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < 5; ++i) seeds.push_back(g.next());
  SketchBank bank(0.3, seeds, capacity);
  std::vector<SketchState> copies;
  for (auto s : seeds) copies.push_back(sketch_init(0.3, s));

  for (const Update& u : g.turnstile(length, n)) {
    bank.update(u);
    std::vector<double> estimates;
    for (std::size_t c = 0; c < copies.size(); ++c) {
      copies[c].update(u);
      ASSERT_EQ(bank.sums_of_squares()[c], copies[c].sum_of_squares());
      ASSERT_EQ(bank.estimate(c), copies[c].estimate());
      estimates.push_back(copies[c].estimate());
    }
    ASSERT_EQ(bank.median_estimate(), median_amplify(estimates));
  }
}

TEST(SketchBank, SparseMatchesCopies) {
  expect_bank_matches(64, 400, 30, 21);
  EXPECT_FALSE(SketchBank(0.3, {1, 2}, 64).dense());
}

TEST(SketchBank, DenseFallbackMatchesCopies) {
  expect_bank_matches(8, 600, 200, 22);
}

TEST(SketchBank, SlotsAreReusedAfterCancellation) {
  // Items churn in and out; the live set never exceeds the capacity.
  std::vector<std::uint64_t> seeds{4, 5, 6};
  SketchBank bank(0.5, seeds, 4);
  std::vector<SketchState> copies;
  for (auto s : seeds) copies.push_back(sketch_init(0.5, s));
  for (Item i = 1; i <= 200; ++i) {
    for (const Update u : {Update{i, +1}, Update{i + 1, +1}, Update{i, -1}, Update{i + 1, -1}}) {
      bank.update(u);
      for (auto& c : copies) c.update(u);
    }
  }
  EXPECT_FALSE(bank.dense());
  for (std::size_t c = 0; c < copies.size(); ++c) {
    EXPECT_EQ(bank.sums_of_squares()[c], copies[c].sum_of_squares());
  }
}

}  // namespace
}  // namespace bms
