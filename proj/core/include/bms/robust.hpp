#pragma once

// Tracking algorithms that play the game: the exact deterministic tracker,
// the bounded-memory robust wrapper around median-amplified F2 sketches, and
// a plain amplified sketch baseline.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>

#include "bms/core.hpp"
#include "bms/net.hpp"
#include "bms/sketch_bank.hpp"

namespace bms {

/// A tracking streaming algorithm: consumes one update per round and
/// emits an estimate of f on the prefix seen so far.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;
  virtual double process(const Update& u) = 0;
  virtual std::string name() const = 0;
};

/// Keeps the exact sparse frequency vector and outputs f rounded up to the
/// net. Never errs; against a deterministic adversary with k persistent bits
/// it sees at most (|net| + 1) * 2^k + 1 distinct items.
class Tracker final : public StreamingAlgorithm {
 public:
  Tracker(Item n, EstimateNet net, int moment_exponent);

  double process(const Update& u) override;
  std::string name() const override { return "tracker"; }

  const FrequencyVector& vector() const noexcept { return vector_; }
  const EstimateNet& net() const noexcept { return net_; }
  int moment_exponent() const noexcept { return moment_exponent_; }
  std::size_t distinct_keys_high_water() const noexcept { return seen_.size(); }

 private:
  FrequencyVector vector_;
  EstimateNet net_;
  int moment_exponent_;
  std::unordered_set<Item> seen_;
};

double tracker_step(Tracker& state, const Update& u);

/// Number of adversary input states: |{0} U net| * 2^k.
std::size_t tau_for_bounded_memory(unsigned k, const EstimateNet& net);

/// ceil(12 (tau ln m + ln(1/delta))), the copy count that makes a median of
/// sketches correct on all m^tau prefix selections except with prob. delta.
std::size_t robust_copies(std::uint64_t m, std::size_t tau, double delta);

struct RobustParams {
  unsigned k = 0;
  double epsilon = 0.5;
  double delta = 0.05;
  std::uint64_t m = 1;
  double alpha = 2.0;
  std::uint64_t master_seed = 0;
};

/// Seed of sketch copy `index` under `master_seed`; pairwise distinct.
std::uint64_t copy_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Robust F2 estimation against adversaries with k persistent bits.
///
/// Error budget: end-to-end eps, net granularity eps/3, one-sided sketch
/// error eps/3 realised as two-sided eps/9 shifted by 1/(1 - eps/9).
class RobustEstimator final : public StreamingAlgorithm {
 public:
  explicit RobustEstimator(const RobustParams& params);

  double process(const Update& u) override;
  std::string name() const override { return "robust"; }

  const RobustParams& params() const noexcept { return params_; }
  const EstimateNet& net() const noexcept { return net_; }
  std::size_t tau() const noexcept { return tau_; }
  std::size_t copies() const noexcept { return bank_.copies(); }
  const SketchBank& bank() const noexcept { return bank_; }
  double sketch_epsilon() const noexcept { return bank_.epsilon_in(); }
  double last_output() const noexcept { return last_output_; }
  /// Median sketch estimate before rounding, from the latest round.
  double last_median() const noexcept { return last_median_; }
  std::uint64_t updates_seen() const noexcept { return updates_seen_; }

 private:
  RobustParams params_;
  EstimateNet net_;
  std::size_t tau_;
  SketchBank bank_;
  double last_output_ = 0.0;
  double last_median_ = 0.0;
  std::uint64_t updates_seen_ = 0;
};

RobustEstimator robust_init(unsigned k, double epsilon, double delta, std::uint64_t m,
                            double alpha, std::uint64_t master_seed);

/// Throws ProtocolError once more than m updates arrive.
double robust_step(RobustEstimator& state, const Update& u);

/// Oblivious baseline: median of amplification_copies(delta) sketches with
/// one-sided error eps, output unrounded. Not robust to adaptivity.
class AmplifiedSketch final : public StreamingAlgorithm {
 public:
  AmplifiedSketch(double epsilon, double delta, std::uint64_t seed);

  double process(const Update& u) override;
  std::string name() const override { return "oblivious-amplified"; }
  std::size_t copies() const noexcept { return bank_.copies(); }

 private:
  SketchBank bank_;
};

}  // namespace bms
