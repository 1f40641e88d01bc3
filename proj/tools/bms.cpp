// bms: play and analyse bounded-memory streaming games.
//
// Exit codes: 0 ok, 1 an algorithm erred (or a suite failed), 2 bad
// configuration, 3 protocol violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bms/arena.hpp"
#include "bms/net.hpp"
#include "bms/oblivious.hpp"
#include "bms/robust.hpp"
#include "bms/serialize.hpp"
#include "bms/sweep.hpp"
#include "bms/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kGameFailure = 1;
constexpr int kConfigError = 2;
constexpr int kProtocolError = 3;

// Flag name -> config key. Values are kept as text and go through the same
// parser as config files.
struct GameFlags {
  std::string config_path;
  std::string out;
  bool timing = false;
  std::vector<std::pair<std::string, std::string>> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file");
    app->add_option("--out", out, "output prefix (writes PREFIX.csv / PREFIX.json)");
    app->add_flag("--timing", timing, "record wall time in the JSON summary");
    static const std::pair<const char*, const char*> kFlags[] = {
        {"m", "stream length"},
        {"n", "universe size (0: 100 ceil(m^c)^2)"},
        {"eps", "approximation parameter"},
        {"delta", "failure probability"},
        {"c", "attacker density exponent"},
        {"k", "persistent bits"},
        {"p", "moment (1 or 2)"},
        {"alpha", "range bound (0: m^p)"},
        {"alg", "tracker | robust | oblivious-amplified"},
        {"adv", "onebit | memoryless | toggle | estimate-hash | cycle-hash | taustream | oblivious"},
        {"tau", "streams of the tau-stream adversary"},
        {"policy", "round-robin | greedy"},
        {"salt", "salt of the hashing adversaries"},
        {"toggle-item", "item used by the toggle adversary"},
        {"seed", "master seed"},
        {"trials", "games per experiment"},
    };
    values.reserve(std::size(kFlags));
    for (const auto& [name, help] : kFlags) {
      std::string key = name;
      for (char& ch : key) {
        if (ch == '-') ch = '_';
      }
      values.emplace_back(key, std::string{});
      app->add_option(fmt::format("--{}", name), values.back().second, help);
    }
  }

  bms::GameConfig resolve() const {
    bms::GameConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw bms::ConfigError(fmt::format("cannot read config file '{}'", config_path));
      std::stringstream text;
      text << in.rdbuf();
      cfg = bms::parse_config_text(text.str(), cfg);
    }
    for (const auto& [key, value] : values) {
      if (!value.empty()) bms::set_config_value(cfg, key, value);
    }
    cfg.validate();
    return cfg;
  }

  bool has(std::string_view key) const {
    for (const auto& [k, v] : values) {
      if (k == key) return !v.empty();
    }
    return false;
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bms::ConfigError(fmt::format("cannot write '{}'", path));
  out << content;
}

int cmd_run(const GameFlags& flags) {
  const bms::GameConfig cfg = flags.resolve();
  const bms::GameTranscript t = bms::run_game(cfg);
  const std::string json = bms::summary_json(t, flags.timing);
  if (flags.out.empty()) {
    fmt::print("{}", json);
  } else {
    write_file(flags.out + ".csv", bms::transcript_csv(t));
    write_file(flags.out + ".json", json);
  }
  return t.summary.success ? kOk : kGameFailure;
}

int cmd_attack(const GameFlags& flags) {
  bms::GameConfig base = flags.resolve();
  std::string rows;
  std::size_t successes = 0;
  for (std::size_t trial = 0; trial < base.trials; ++trial) {
    bms::GameConfig cfg = base;
    cfg.seed = bms::trial_seed(base.seed, base.m, trial);
    const bms::GameTranscript t = bms::run_game(cfg);
    successes += t.summary.success ? 1 : 0;
    rows += fmt::format(
        "{}    {{\"trial\": {}, \"seed\": {}, \"success\": {}, \"flip_number\": {}, "
        "\"min_density_after_burnin\": {}, \"type1_count\": {}, \"distinct_items\": {}}}",
        trial == 0 ? "" : ",\n", trial, cfg.seed, t.summary.success, t.summary.flip_number,
        t.summary.min_density_after_burnin, t.summary.type1_count, t.summary.distinct_items);
  }
  const double fraction = static_cast<double>(successes) / static_cast<double>(base.trials);
  const std::string json = fmt::format(
      "{{\n  \"alg\": \"{}\",\n  \"adv\": \"{}\",\n  \"m\": {},\n  \"n\": {},\n"
      "  \"burn_in\": {},\n  \"success_fraction\": {:.17g},\n  \"trials\": [\n{}\n  ]\n}}\n",
      bms::to_string(base.alg), bms::to_string(base.adv), base.m, base.resolved_n(),
      base.burn_in(), fraction, rows);
  if (flags.out.empty()) {
    fmt::print("{}", json);
  } else {
    write_file(flags.out + ".json", json);
  }
  return successes == base.trials ? kOk : kGameFailure;
}

std::string fit_json(const bms::PowerLawFit& fit) {
  std::string residuals;
  for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
    residuals += fmt::format("{}{:.17g}", i == 0 ? "" : ", ", fit.residuals[i]);
  }
  return fmt::format("{{\"exponent\": {:.17g}, \"intercept\": {:.17g}, \"residuals\": [{}]}}",
                     fit.exponent, fit.intercept, residuals);
}

int cmd_sweep(const GameFlags& flags, const std::vector<std::uint64_t>& m_values) {
  const bms::GameConfig base = flags.resolve();
  const bms::SweepReport report = bms::scaling_sweep(base, m_values, base.trials);
  std::string points;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    points += fmt::format(
        "{}    {{\"m\": {}, \"median_flip_number\": {:.17g}, \"median_min_density\": {:.17g}}}",
        i == 0 ? "" : ",\n", p.m, p.median_flip_number, p.median_min_density);
  }
  const std::string json = fmt::format(
      "{{\n  \"adv\": \"{}\",\n  \"c\": {:.17g},\n  \"trials\": {},\n  \"points\": [\n{}\n  ],\n"
      "  \"flip_fit\": {},\n  \"density_fit\": {}\n}}\n",
      bms::to_string(base.adv), base.c, base.trials, points, fit_json(report.flip_fit),
      fit_json(report.density_fit));
  if (flags.out.empty()) {
    fmt::print("{}", json);
  } else {
    write_file(flags.out + ".json", json);
  }
  return kOk;
}

int cmd_validate(const std::string& suite, std::uint64_t seed) {
  std::vector<bms::SuiteResult> results;
  const bool all = suite == "all";
  if (all || suite == "net") {
    results.push_back(bms::validate_net({1e2, 1e4, 1e8}, {0.01, 0.1, 0.5}, 100000, seed));
  }
  if (all || suite == "order-invariance") {
    results.push_back(bms::validate_order_invariance(100, 5, 200, seed));
  }
  if (all || suite == "amplification") {
    results.push_back(bms::validate_amplification(0.05, 0.1, 10000, seed));
  }
  if (results.empty()) throw bms::ConfigError(fmt::format("unknown suite '{}'", suite));
  bool ok = true;
  for (const auto& r : results) {
    fmt::print("{} {}: {}\n", r.passed() ? "PASS" : "FAIL", r.name, r.detail);
    ok = ok && r.passed();
  }
  return ok ? kOk : kGameFailure;
}

int cmd_copies(const GameFlags& flags) {
  const bms::GameConfig cfg = flags.resolve();
  std::string amplification = "null";
  if (cfg.delta < 0.1) amplification = std::to_string(bms::amplification_copies(cfg.delta));
  const bms::EstimateNet net(cfg.resolved_alpha(), cfg.epsilon);
  const std::size_t tau =
      flags.has("tau") ? cfg.tau : bms::tau_for_bounded_memory(cfg.k, net);
  fmt::print(
      "{{\n  \"amplification_copies\": {},\n  \"net_points\": {},\n  \"tau\": {},\n"
      "  \"robust_copies\": {},\n  \"bucket_count\": {}\n}}\n",
      amplification, net.size(), tau, bms::robust_copies(cfg.m, tau, cfg.delta),
      cfg.epsilon < 1.0 ? std::to_string(bms::bucket_count_for(cfg.epsilon)) : "null");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-memory adversarial streaming games"};
  app.require_subcommand(1);

  GameFlags run_flags, attack_flags, sweep_flags, copies_flags;
  auto* run = app.add_subcommand("run", "play one game and write its transcript");
  run_flags.attach(run);

  auto* attack = app.add_subcommand("attack", "play --trials games and report attack metrics");
  attack_flags.attach(attack);

  auto* sweep = app.add_subcommand("sweep", "flip-number and density scaling across m");
  sweep_flags.attach(sweep);
  std::vector<std::uint64_t> m_values;
  sweep->add_option("--m-values", m_values, "stream lengths (at least 3)")->required();

  auto* validate = app.add_subcommand("validate", "run invariant suites");
  std::string suite = "all";
  std::uint64_t validate_seed = 1;
  validate->add_option("--suite", suite, "net | order-invariance | amplification | all");
  validate->add_option("--seed", validate_seed, "suite seed");

  auto* copies = app.add_subcommand("copies", "print amplification and robust copy counts");
  copies_flags.attach(copies);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (attack->parsed()) return cmd_attack(attack_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, m_values);
    if (validate->parsed()) return cmd_validate(suite, validate_seed);
    if (copies->parsed()) return cmd_copies(copies_flags);
  } catch (const bms::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kConfigError;
  } catch (const bms::ProtocolError& e) {
    fmt::print(stderr, "protocol violation: {}\n", e.what());
    return kProtocolError;
  } catch (const bms::DomainError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kConfigError;
  }
  return kOk;
}
