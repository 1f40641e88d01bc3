#pragma once

// Adversaries for the bounded-memory game.
//
// A memory-bounded adversary is a const, stateless function of exactly three
// inputs: the last estimate (absent in round 1), its k persistent bits, and a
// fresh per-round random source. Working memory cannot survive a round
// because nothing else is reachable from `next`. The tau-stream adversary is
// the one exception: it has unlimited memory but may only emit heads of tau
// streams fixed before the game starts.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bms/core.hpp"
#include "bms/hashing.hpp"

namespace bms {

/// Fresh randomness for one round, keyed by (adversary seed, round). Draws
/// within a round are a counter-mode stream; nothing carries across rounds.
class RoundRandomness {
 public:
  RoundRandomness(std::uint64_t adversary_seed, std::uint64_t round) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [lo, hi] (inclusive), unbiased.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) noexcept;
  bool coin() noexcept { return (next() >> 63) != 0; }

 private:
  hashing::CounterRng rng_;
  std::uint64_t counter_ = 0;
};

struct Move {
  Update update;
  std::uint64_t persistent = 0;
};

class MemoryBoundedAdversary {
 public:
  virtual ~MemoryBoundedAdversary() = default;

  /// k: the persistent state always lies in [0, 2^k).
  virtual unsigned persistent_bits() const = 0;
  virtual Move next(std::optional<double> last_estimate, std::uint64_t persistent,
                    RoundRandomness& fresh) const = 0;
  virtual std::string name() const = 0;
};

/// Thresholds of the F2 attackers. m^c is rounded up as ceil(m^c).
struct AttackerParams {
  std::uint64_t m = 1;
  double c = 0.4;
  double epsilon = 0.5;
  Item n = 2;

  double base() const { return static_cast<double>(ceil_power(static_cast<double>(m), c)); }
  double t1() const { return base(); }
  double t2() const { return (1.0 + epsilon) * base(); }
  double t3() const;
  double t4() const;

  /// Throws ConfigError unless c in (0, 1) (c < 1/2 when memoryless),
  /// eps in (0, 1], and n > 10 m^{2c}.
  void validate(bool memoryless) const;
};

enum class Direction : std::uint64_t { kUp = 0, kDown = 1 };

/// One persistent bit (UP/DOWN): drives F2 up to (1+eps)^3 m^c, then back
/// down below (1+eps) m^c, over and over, after ~m^c fresh insertions.
Move onebit_next(const AttackerParams& p, std::optional<double> estimate, Direction state,
                 RoundRandomness& fresh);

/// Memoryless variant: an unbiased random walk on item 1 between
/// (1+eps) m^c and (1+eps)^4 m^c.
Update memoryless_next(const AttackerParams& p, std::optional<double> estimate,
                       RoundRandomness& fresh);

class OneBitAttacker final : public MemoryBoundedAdversary {
 public:
  explicit OneBitAttacker(const AttackerParams& params);
  unsigned persistent_bits() const override { return 1; }
  Move next(std::optional<double> last_estimate, std::uint64_t persistent,
            RoundRandomness& fresh) const override;
  std::string name() const override { return "onebit"; }
  const AttackerParams& params() const noexcept { return params_; }

 private:
  AttackerParams params_;
};

class MemorylessAttacker final : public MemoryBoundedAdversary {
 public:
  explicit MemorylessAttacker(const AttackerParams& params);
  unsigned persistent_bits() const override { return 0; }
  Move next(std::optional<double> last_estimate, std::uint64_t persistent,
            RoundRandomness& fresh) const override;
  std::string name() const override { return "memoryless"; }
  const AttackerParams& params() const noexcept { return params_; }

 private:
  AttackerParams params_;
};

/// Deterministic memoryless: insert `item` when the estimate is 0 (or in
/// round 1), delete it otherwise.
Update toggle_next(std::optional<double> estimate, Item item = 1);

/// Deterministic memoryless: the item is 2 + (stable hash of the estimate
/// mod (n - 1)); the sign alternates with the parity of the estimate's
/// power-bucket floor(log2(estimate)) (zero/absent count as bucket 0).
Update estimate_hash_next(std::optional<double> estimate, Item n, std::uint64_t salt);

/// Deterministic with k persistent bits: the item hashes (estimate, state);
/// the state advances by one modulo 2^k every round.
Move cycle_hash_next(std::optional<double> estimate, std::uint64_t state, unsigned k, Item n,
                     std::uint64_t salt);

class ToggleAdversary final : public MemoryBoundedAdversary {
 public:
  explicit ToggleAdversary(Item item = 1) : item_(item) {}
  unsigned persistent_bits() const override { return 0; }
  Move next(std::optional<double> last_estimate, std::uint64_t persistent,
            RoundRandomness& fresh) const override;
  std::string name() const override { return "toggle"; }

 private:
  Item item_;
};

class EstimateHashAdversary final : public MemoryBoundedAdversary {
 public:
  EstimateHashAdversary(Item n, std::uint64_t salt);
  unsigned persistent_bits() const override { return 0; }
  Move next(std::optional<double> last_estimate, std::uint64_t persistent,
            RoundRandomness& fresh) const override;
  std::string name() const override { return "estimate-hash"; }

 private:
  Item n_;
  std::uint64_t salt_;
};

class CycleHashAdversary final : public MemoryBoundedAdversary {
 public:
  CycleHashAdversary(unsigned k, Item n, std::uint64_t salt);
  unsigned persistent_bits() const override { return k_; }
  Move next(std::optional<double> last_estimate, std::uint64_t persistent,
            RoundRandomness& fresh) const override;
  std::string name() const override { return "cycle-hash"; }

 private:
  unsigned k_;
  Item n_;
  std::uint64_t salt_;
};

// ---------------------------------------------------------------------------
// tau-stream adversary

enum class SelectionPolicy { kRoundRobin, kGreedy };

/// Uniform items from [1, n], insertions only; seeded independently of the
/// algorithm.
std::vector<Update> uniform_insertions(std::size_t length, Item n, std::uint64_t seed);

/// Uniform items from [1, n] with independent fair signs.
std::vector<Update> random_turnstile(std::size_t length, Item n, std::uint64_t seed);

/// Commits to a first update plus tau queues of updates before the game,
/// then each round pops the head of one nonempty queue. It remembers every
/// update it sent, so the greedy policy can evaluate the true F2 itself.
class TauStreamAdversary {
 public:
  TauStreamAdversary(Update first, std::vector<std::vector<Update>> streams,
                     SelectionPolicy policy, Item n);

  /// Round 1.
  Update first_update();
  /// Rounds >= 2; throws ProtocolError once every queue is empty.
  Update next(double last_estimate);

  std::size_t tau() const noexcept { return queues_.size(); }
  std::size_t pops() const noexcept { return pops_; }
  /// Queue chosen in the latest round (0 in round 1).
  std::size_t last_choice() const noexcept { return last_choice_; }

 private:
  std::size_t choose(double last_estimate);

  Update first_;
  std::vector<std::deque<Update>> queues_;
  SelectionPolicy policy_;
  FrequencyVector sent_;
  std::size_t cursor_ = 0;
  std::size_t pops_ = 0;
  std::size_t last_choice_ = 0;
};

/// tau streams of m - 1 uniform insertions each, first update from the same
/// generator.
TauStreamAdversary make_tau_stream_adversary(std::size_t tau, std::uint64_t m, Item n,
                                             SelectionPolicy policy, std::uint64_t seed);

/// Oblivious replay of one fixed stream: a tau-stream adversary with tau = 1.
TauStreamAdversary make_oblivious_replayer(const std::vector<Update>& stream, Item n);

}  // namespace bms
