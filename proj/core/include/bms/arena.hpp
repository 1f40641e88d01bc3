#pragma once

// The game engine: rounds, referee, transcripts, and per-game attack metrics.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bms/adversaries.hpp"
#include "bms/core.hpp"
#include "bms/robust.hpp"

namespace bms {

enum class AlgorithmKind { kTracker, kRobust, kObliviousAmplified };
enum class AdversaryKind {
  kOneBit,
  kMemoryless,
  kToggle,
  kEstimateHash,
  kCycleHash,
  kTauStream,
  kOblivious,
};

std::string_view to_string(AlgorithmKind kind);
std::string_view to_string(AdversaryKind kind);
std::string_view to_string(SelectionPolicy policy);
AlgorithmKind parse_algorithm(std::string_view text);
AdversaryKind parse_adversary(std::string_view text);
SelectionPolicy parse_policy(std::string_view text);

/// Everything needed to replay a game bit for bit.
struct GameConfig {
  std::uint64_t m = 1000;
  Item n = 0;  ///< 0 selects 100 * ceil(m^c)^2 (at least 2)
  double epsilon = 0.5;
  double delta = 0.05;
  double c = 0.4;
  unsigned k = 0;  ///< persistent bits: robust wrapper budget, cycle-hash memory
  int p = 2;
  double alpha = 0.0;  ///< 0 selects m^p
  AlgorithmKind alg = AlgorithmKind::kTracker;
  AdversaryKind adv = AdversaryKind::kOneBit;
  std::size_t tau = 2;
  SelectionPolicy policy = SelectionPolicy::kRoundRobin;
  std::uint64_t salt = 0;
  Item toggle_item = 1;
  std::uint64_t seed = 1;
  std::size_t trials = 1;

  Item resolved_n() const;
  double resolved_alpha() const;
  /// ceil(m^c): rounds before this boundary are burn-in.
  std::uint64_t burn_in() const;

  /// Throws ConfigError on any out-of-domain parameter.
  void validate() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

/// Flat `key = value` text, one key per line, '#' comments. Parsing starts
/// from `base`, so unspecified keys keep their values.
std::string to_config_text(const GameConfig& cfg);
GameConfig parse_config_text(std::string_view text, GameConfig base = {});
/// Throws ConfigError for unknown keys or malformed values.
void set_config_value(GameConfig& cfg, std::string_view key, std::string_view value);

struct RoundRecord {
  std::uint64_t round = 0;
  Update update;
  double true_value = 0.0;
  double estimate = 0.0;
  std::size_t density = 0;
  bool correct = false;
  std::uint64_t persistent_state = 0;
};

struct GameSummary {
  bool success = false;
  std::size_t flip_number = 0;
  std::size_t flip_number_estimates = 0;
  std::size_t min_density_after_burnin = 0;
  std::size_t type1_count = 0;
  std::size_t distinct_items = 0;
  double elapsed_ms = 0.0;
};

struct GameTranscript {
  GameConfig config;
  std::vector<RoundRecord> rounds;
  GameSummary summary;
};

/// The engine's view of the adversary: one update per round from the last
/// estimate (absent in round 1).
class AdversaryDriver {
 public:
  virtual ~AdversaryDriver() = default;
  virtual Update play(std::optional<double> last_estimate, std::uint64_t round) = 0;
  /// Persistent state after the latest play (bits, or chosen queue for tau-stream).
  virtual std::uint64_t state() const = 0;
  virtual std::string name() const = 0;
};

/// Owns the k persistent bits and hands the adversary nothing else besides
/// the estimate and fresh randomness. Rejects states outside [0, 2^k).
class BoundedAdversaryDriver final : public AdversaryDriver {
 public:
  BoundedAdversaryDriver(std::unique_ptr<const MemoryBoundedAdversary> adversary,
                         std::uint64_t seed);
  Update play(std::optional<double> last_estimate, std::uint64_t round) override;
  std::uint64_t state() const override { return persistent_; }
  std::string name() const override { return adversary_->name(); }

 private:
  std::unique_ptr<const MemoryBoundedAdversary> adversary_;
  std::uint64_t seed_;
  std::uint64_t persistent_ = 0;
};

class TauStreamDriver final : public AdversaryDriver {
 public:
  explicit TauStreamDriver(TauStreamAdversary adversary);
  Update play(std::optional<double> last_estimate, std::uint64_t round) override;
  std::uint64_t state() const override { return adversary_.last_choice(); }
  std::string name() const override { return "taustream"; }
  const TauStreamAdversary& adversary() const noexcept { return adversary_; }

 private:
  TauStreamAdversary adversary_;
};

std::uint64_t algorithm_seed(std::uint64_t master_seed) noexcept;
std::uint64_t adversary_seed(std::uint64_t master_seed) noexcept;

std::unique_ptr<StreamingAlgorithm> make_algorithm(const GameConfig& cfg);
std::unique_ptr<AdversaryDriver> make_adversary(const GameConfig& cfg);

/// Plays cfg.m rounds between the given players and referees each round.
/// Protocol violations (bad update, exhausted streams, extra updates) throw
/// ProtocolError.
GameTranscript play_game(const GameConfig& cfg, StreamingAlgorithm& algorithm,
                         AdversaryDriver& adversary);

GameTranscript run_game(const GameConfig& cfg);

struct AttackMetrics {
  std::size_t flip_number = 0;
  std::size_t min_density_after_burnin = 0;
  std::size_t type1_count = 0;
};

/// Flip number of the true values, minimum density over rounds after
/// ceil(m^c), and the count of insertions of items other than 1.
AttackMetrics attack_metrics(const GameTranscript& t, double c, double epsilon);

}  // namespace bms
