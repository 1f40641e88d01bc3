// Acceptance gate: one PASS/FAIL line per criterion, each checked at its
// stated tolerance and runtime budget. Pass criterion numbers as arguments
// to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "bms/arena.hpp"
#include "bms/net.hpp"
#include "bms/oblivious.hpp"
#include "bms/robust.hpp"
#include "bms/sweep.hpp"
#include "bms/validate.hpp"
#include "json.hpp"
#include "support/cli.hpp"
#include "support/gen.hpp"

namespace {

using namespace bms;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> check;
};

Outcome from_suite(const SuiteResult& r) { return {r.passed(), r.detail}; }

Outcome net_soundness() {
  return from_suite(validate_net({1e2, 1e4, 1e8}, {0.01, 0.1, 0.5}, 100000, 1));
}

Outcome deterministic_tracker() {
  std::vector<GameConfig> configs;
  GameConfig base;
  base.m = 100000;
  base.epsilon = 0.5;
  base.alg = AlgorithmKind::kTracker;
  for (Item item = 1; item <= 6; ++item) {
    GameConfig cfg = base;
    cfg.adv = AdversaryKind::kToggle;
    cfg.toggle_item = item;
    configs.push_back(cfg);
  }
  for (std::uint64_t salt = 0; salt < 7; ++salt) {
    GameConfig cfg = base;
    cfg.adv = AdversaryKind::kEstimateHash;
    cfg.salt = salt;
    configs.push_back(cfg);
    cfg.adv = AdversaryKind::kCycleHash;  // k = 0: one state, so memoryless
    cfg.k = 0;
    configs.push_back(cfg);
  }
  const std::size_t net_points = EstimateNet(base.resolved_alpha(), base.epsilon).size();
  std::size_t incorrect = 0, worst_distinct = 0;
  for (const auto& cfg : configs) {
    const GameTranscript t = run_game(cfg);
    for (const auto& r : t.rounds) incorrect += r.correct ? 0 : 1;
    worst_distinct = std::max(worst_distinct, t.summary.distinct_items);
  }
  const bool ok = incorrect == 0 && worst_distinct <= net_points + 2 && configs.size() == 20;
  return {ok, fmt::format("{} configs, {} incorrect rounds, distinct high-water {} (bound {})",
                          configs.size(), incorrect, worst_distinct, net_points + 2)};
}

Outcome order_invariance() { return from_suite(validate_order_invariance(100, 5, 200, 1)); }

Outcome amplification() {
  if (amplification_copies(0.05) != 36) return {false, "t(0.05) != 36"};
  return from_suite(validate_amplification(0.05, 0.1, 10000, 1));
}

Outcome attack_density() {
  GameConfig cfg;
  cfg.m = 100000;
  cfg.c = 0.4;
  cfg.epsilon = 0.5;
  cfg.n = 1000000;
  cfg.adv = AdversaryKind::kOneBit;
  const double bound = static_cast<double>(cfg.burn_in()) / (1.0 + cfg.epsilon);
  constexpr std::size_t kTrials = 50;
  std::size_t good = 0, lowest = SIZE_MAX, min_flip = SIZE_MAX;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    GameConfig g = cfg;
    g.seed = trial_seed(1, cfg.m, trial);
    const GameTranscript t = run_game(g);
    const AttackMetrics m = attack_metrics(t, cfg.c, cfg.epsilon);
    good += static_cast<double>(m.min_density_after_burnin) >= bound ? 1 : 0;
    lowest = std::min(lowest, m.min_density_after_burnin);
    min_flip = std::min(min_flip, m.flip_number);
  }
  const double fraction = static_cast<double>(good) / kTrials;
  return {fraction >= 0.9 && min_flip >= 100,
          fmt::format("{}/{} trials with density >= {:.1f} (lowest {}), min flip number {}", good,
                      kTrials, bound, lowest, min_flip)};
}

Outcome flip_scaling() {
  const std::vector<std::uint64_t> ms{1u << 14, 1u << 16, 1u << 18, 1u << 20};
  GameConfig base;
  base.c = 0.4;
  base.epsilon = 0.5;
  base.adv = AdversaryKind::kMemoryless;
  const SweepReport memoryless = scaling_sweep(base, ms, 20);
  base.adv = AdversaryKind::kOneBit;
  const SweepReport onebit = scaling_sweep(base, ms, 20);
  const double e0 = memoryless.flip_fit.exponent, e1 = onebit.flip_fit.exponent;
  const double d0 = memoryless.density_fit.exponent, d1 = onebit.density_fit.exponent;
  const bool ok = std::abs(e0 - 0.6) <= 0.15 && std::abs(e1 - 0.8) <= 0.15 &&
                  std::abs(d0 - 0.4) <= 0.1 && std::abs(d1 - 0.4) <= 0.1;
  return {ok, fmt::format("flip exponents memoryless {:.3f} one-bit {:.3f}; density exponents "
                          "{:.3f} {:.3f}",
                          e0, e1, d0, d1)};
}

Outcome robust_wrapper() {
  GameConfig cfg;
  cfg.m = 500;
  cfg.k = 0;
  cfg.epsilon = 0.9;
  cfg.delta = 0.05;
  cfg.c = 0.3;
  cfg.alg = AlgorithmKind::kRobust;
  cfg.adv = AdversaryKind::kMemoryless;
  constexpr std::uint64_t kSeeds = 200;
  std::size_t wins = 0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    cfg.seed = seed;
    wins += run_game(cfg).summary.success ? 1 : 0;
  }
  const double fraction = static_cast<double>(wins) / kSeeds;
  return {fraction >= 0.9, fmt::format("{}/{} games fully correct (alpha {}, {} copies)", wins,
                                       kSeeds, cfg.resolved_alpha(),
                                       robust_copies(cfg.m, 50, cfg.delta))};
}

Outcome copy_counts() {
  using nlohmann::json;
  const auto a = json::parse(testing::run_cli("copies --delta 0.05").out);
  const auto b = json::parse(testing::run_cli("copies --m 1000 --tau 2 --delta 0.1").out);
  const auto c = json::parse(testing::run_cli("copies --k 1 --alpha 8 --eps 1").out);
  const int t1 = a["amplification_copies"], t2 = b["robust_copies"], tau = c["tau"];
  return {t1 == 36 && t2 == 194 && tau == 10,
          fmt::format("t = {} (delta 0.05), t = {} (m 1000, tau 2, delta 0.1), tau = {}", t1, t2,
                      tau)};
}

// Exhaustive maximum over all index subsets.
std::size_t exhaustive_flip(const std::vector<double>& y, double eps) {
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << y.size()); ++mask) {
    std::size_t count = 0;
    double prev = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < y.size() && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (count > 0) ok = prev < (1.0 - eps) * y[i] || prev > (1.0 + eps) * y[i];
      prev = y[i];
      ++count;
    }
    if (ok) best = std::max(best, count);
  }
  return best;
}

Outcome flip_oracle() {
  testing::Gen g(9);
  const double epsilons[] = {0.05, 0.2, 0.5, 0.75, 1.0};
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> y(g.range(1, 12));
    const bool grid = g.coin();
    for (double& v : y) v = grid ? static_cast<double>(g.range(0, 9)) : 20.0 * g.unit();
    const double eps = epsilons[g.range(0, 4)];
    mismatches += flip_number(y, eps) == exhaustive_flip(y, eps) ? 0 : 1;
  }
  return {mismatches == 0, fmt::format("10000 sequences, {} mismatches", mismatches)};
}

Outcome determinism() {
  const std::string dir = std::string(BMS_SCRATCH_DIR);
  const std::string args = "run --m 2000 --adv memoryless --seed 42 --out ";
  const auto a = testing::run_cli(args + dir + "/det-a");
  const auto b = testing::run_cli(args + dir + "/det-b");
  const std::string csv_a = testing::slurp(dir + "/det-a.csv");
  const std::string json_a = testing::slurp(dir + "/det-a.json");
  const bool ok = a.exit_code == 0 && b.exit_code == 0 && !csv_a.empty() &&
                  csv_a == testing::slurp(dir + "/det-b.csv") &&
                  json_a == testing::slurp(dir + "/det-b.json");
  return {ok, fmt::format("CSV {} bytes, JSON {} bytes", csv_a.size(), json_a.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "net soundness", 10, net_soundness},
      {2, "deterministic tracker", 30, deterministic_tracker},
      {3, "order invariance", 5, order_invariance},
      {4, "amplification", 5, amplification},
      {5, "attack density", 120, attack_density},
      {6, "attack flip-number scaling", 900, flip_scaling},
      {7, "robust wrapper vs memoryless adversary", 600, robust_wrapper},
      {8, "copy-count formulas", 60, copy_counts},
      {9, "flip-number oracle equivalence", 10, flip_oracle},
      {10, "determinism", 60, determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_s;
    const bool passed = o.passed && in_budget;
    failures += passed ? 0 : 1;
    fmt::print("{} criterion {:>2}: {} | {} | {:.1f}s (budget {:.0f}s){}\n",
               passed ? "PASS" : "FAIL", c.id, c.title, o.detail, seconds, c.budget_s,
               in_budget ? "" : " over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
