#include "bms/arena.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "bms/hashing.hpp"
#include "bms/net.hpp"

namespace bms {

Item GameConfig::resolved_n() const {
  if (n != 0) return n;
  const std::uint64_t base = ceil_power(static_cast<double>(m), c);
  return std::max<Item>(2, 100 * base * base);
}

double GameConfig::resolved_alpha() const {
  if (alpha != 0.0) return alpha;
  return std::max(2.0, std::pow(static_cast<double>(m), p));
}

std::uint64_t GameConfig::burn_in() const { return ceil_power(static_cast<double>(m), c); }

void GameConfig::validate() const {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (n == 1) throw ConfigError("universe n must be >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ConfigError(fmt::format("eps {} outside (0, 1]", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError(fmt::format("delta {} outside (0, 1)", delta));
  if (!(c > 0.0 && c < 1.0)) throw ConfigError(fmt::format("c {} outside (0, 1)", c));
  if (p != 1 && p != 2) throw ConfigError(fmt::format("p {} not in {{1, 2}}", p));
  if (alpha != 0.0 && !(alpha >= 2.0)) throw ConfigError(fmt::format("alpha {} below 2", alpha));
  if (k > 32) throw ConfigError(fmt::format("k {} above 32", k));
  if (tau < 1) throw ConfigError("tau must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (toggle_item < 1 || toggle_item > resolved_n()) {
    throw ConfigError(fmt::format("toggle_item {} outside [1, n]", toggle_item));
  }
}

// ---------------------------------------------------------------------------

BoundedAdversaryDriver::BoundedAdversaryDriver(
    std::unique_ptr<const MemoryBoundedAdversary> adversary, std::uint64_t seed)
    : adversary_(std::move(adversary)), seed_(seed) {}

Update BoundedAdversaryDriver::play(std::optional<double> last_estimate, std::uint64_t round) {
  RoundRandomness fresh(seed_, round);
  const Move move = adversary_->next(last_estimate, persistent_, fresh);
  const unsigned k = adversary_->persistent_bits();
  if (k < 64 && move.persistent >= (std::uint64_t{1} << k)) {
    throw ProtocolError(fmt::format("{} kept state {} with only {} persistent bits",
                                    adversary_->name(), move.persistent, k));
  }
  persistent_ = move.persistent;
  return move.update;
}

TauStreamDriver::TauStreamDriver(TauStreamAdversary adversary) : adversary_(std::move(adversary)) {}

Update TauStreamDriver::play(std::optional<double> last_estimate, std::uint64_t round) {
  if (round == 1) return adversary_.first_update();
  if (!last_estimate) throw ProtocolError("tau-stream adversary needs the previous estimate");
  return adversary_.next(*last_estimate);
}

std::uint64_t algorithm_seed(std::uint64_t master_seed) noexcept {
  return hashing::derive_seed(master_seed, 1);
}

std::uint64_t adversary_seed(std::uint64_t master_seed) noexcept {
  return hashing::derive_seed(master_seed, 2);
}

std::unique_ptr<StreamingAlgorithm> make_algorithm(const GameConfig& cfg) {
  cfg.validate();
  switch (cfg.alg) {
    case AlgorithmKind::kTracker:
      return std::make_unique<Tracker>(cfg.resolved_n(),
                                       EstimateNet(cfg.resolved_alpha(), cfg.epsilon), cfg.p);
    case AlgorithmKind::kRobust:
      if (cfg.p != 2) throw ConfigError("the robust wrapper estimates F2 only (p = 2)");
      return std::make_unique<RobustEstimator>(RobustParams{
          cfg.k, cfg.epsilon, cfg.delta, cfg.m, cfg.resolved_alpha(), algorithm_seed(cfg.seed)});
    case AlgorithmKind::kObliviousAmplified:
      if (cfg.p != 2) throw ConfigError("the amplified sketch estimates F2 only (p = 2)");
      return std::make_unique<AmplifiedSketch>(cfg.epsilon, cfg.delta, algorithm_seed(cfg.seed));
  }
  throw ConfigError("unknown algorithm");
}

std::unique_ptr<AdversaryDriver> make_adversary(const GameConfig& cfg) {
  cfg.validate();
  const Item n = cfg.resolved_n();
  const std::uint64_t seed = adversary_seed(cfg.seed);
  const AttackerParams params{cfg.m, cfg.c, cfg.epsilon, n};
  auto bounded = [seed](auto adversary) -> std::unique_ptr<AdversaryDriver> {
    return std::make_unique<BoundedAdversaryDriver>(std::move(adversary), seed);
  };
  switch (cfg.adv) {
    case AdversaryKind::kOneBit:
      return bounded(std::make_unique<const OneBitAttacker>(params));
    case AdversaryKind::kMemoryless:
      return bounded(std::make_unique<const MemorylessAttacker>(params));
    case AdversaryKind::kToggle:
      return bounded(std::make_unique<const ToggleAdversary>(cfg.toggle_item));
    case AdversaryKind::kEstimateHash:
      return bounded(std::make_unique<const EstimateHashAdversary>(n, cfg.salt));
    case AdversaryKind::kCycleHash:
      return bounded(std::make_unique<const CycleHashAdversary>(cfg.k, n, cfg.salt));
    case AdversaryKind::kTauStream:
      return std::make_unique<TauStreamDriver>(
          make_tau_stream_adversary(cfg.tau, cfg.m, n, cfg.policy, seed));
    case AdversaryKind::kOblivious:
      return std::make_unique<TauStreamDriver>(
          make_oblivious_replayer(random_turnstile(cfg.m, n, seed), n));
  }
  throw ConfigError("unknown adversary");
}

// ---------------------------------------------------------------------------

GameTranscript play_game(const GameConfig& cfg, StreamingAlgorithm& algorithm,
                         AdversaryDriver& adversary) {
  const auto start = std::chrono::steady_clock::now();
  const Item n = cfg.resolved_n();

  GameTranscript t;
  t.config = cfg;
  t.rounds.reserve(cfg.m);

  FrequencyVector truth(n);
  std::unordered_set<Item> distinct;
  std::optional<double> estimate_memory;
  bool success = true;

  for (std::uint64_t j = 1; j <= cfg.m; ++j) {
    const Update u = adversary.play(estimate_memory, j);
    try {
      check_update(u, n);
    } catch (const DomainError& e) {
      throw ProtocolError(fmt::format("round {}: {} sent an invalid update: {}", j,
                                      adversary.name(), e.what()));
    }
    const double y = algorithm.process(u);
    estimate_memory = y;

    truth.apply(u);
    distinct.insert(u.item);
    RoundRecord r;
    r.round = j;
    r.update = u;
    r.true_value = exact_moment(truth, cfg.p);
    r.estimate = y;
    r.density = truth.density();
    r.correct = is_correct_estimate(r.true_value, y, cfg.epsilon);
    r.persistent_state = adversary.state();
    success = success && r.correct;
    t.rounds.push_back(r);
  }

  const AttackMetrics metrics = attack_metrics(t, cfg.c, cfg.epsilon);
  std::vector<double> estimates;
  estimates.reserve(t.rounds.size());
  for (const auto& r : t.rounds) estimates.push_back(r.estimate);

  t.summary.success = success;
  t.summary.flip_number = metrics.flip_number;
  t.summary.flip_number_estimates = flip_number(estimates, cfg.epsilon);
  t.summary.min_density_after_burnin = metrics.min_density_after_burnin;
  t.summary.type1_count = metrics.type1_count;
  t.summary.distinct_items = distinct.size();
  t.summary.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return t;
}

GameTranscript run_game(const GameConfig& cfg) {
  auto algorithm = make_algorithm(cfg);
  auto adversary = make_adversary(cfg);
  return play_game(cfg, *algorithm, *adversary);
}

AttackMetrics attack_metrics(const GameTranscript& t, double c, double epsilon) {
  AttackMetrics out;
  std::vector<double> truths;
  truths.reserve(t.rounds.size());
  for (const auto& r : t.rounds) truths.push_back(r.true_value);
  out.flip_number = flip_number(truths, epsilon);

  const std::uint64_t burn_in = ceil_power(static_cast<double>(t.config.m), c);
  std::size_t min_density = std::numeric_limits<std::size_t>::max();
  for (const auto& r : t.rounds) {
    if (r.round > burn_in) min_density = std::min(min_density, r.density);
    if (r.update.item != 1 && r.update.delta > 0) ++out.type1_count;
  }
  out.min_density_after_burnin =
      min_density == std::numeric_limits<std::size_t>::max() ? 0 : min_density;
  return out;
}

}  // namespace bms
