#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "bms/arena.hpp"

namespace bms {

namespace {

struct AlgorithmName {
  AlgorithmKind kind;
  std::string_view name;
};
struct AdversaryName {
  AdversaryKind kind;
  std::string_view name;
};

constexpr AlgorithmName kAlgorithms[] = {
    {AlgorithmKind::kTracker, "tracker"},
    {AlgorithmKind::kRobust, "robust"},
    {AlgorithmKind::kObliviousAmplified, "oblivious-amplified"},
};

constexpr AdversaryName kAdversaries[] = {
    {AdversaryKind::kOneBit, "onebit"},
    {AdversaryKind::kMemoryless, "memoryless"},
    {AdversaryKind::kToggle, "toggle"},
    {AdversaryKind::kEstimateHash, "estimate-hash"},
    {AdversaryKind::kCycleHash, "cycle-hash"},
    {AdversaryKind::kTauStream, "taustream"},
    {AdversaryKind::kOblivious, "oblivious"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid integer", key, text));
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  // std::from_chars for double is unavailable on some toolchains.
  const std::string copy(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (copy.empty() || used != copy.size() || !std::isfinite(value)) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return value;
}

std::string real(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

std::string_view to_string(AlgorithmKind kind) {
  for (const auto& a : kAlgorithms) {
    if (a.kind == kind) return a.name;
  }
  return "?";
}

std::string_view to_string(AdversaryKind kind) {
  for (const auto& a : kAdversaries) {
    if (a.kind == kind) return a.name;
  }
  return "?";
}

std::string_view to_string(SelectionPolicy policy) {
  return policy == SelectionPolicy::kGreedy ? "greedy" : "round-robin";
}

AlgorithmKind parse_algorithm(std::string_view text) {
  for (const auto& a : kAlgorithms) {
    if (a.name == text) return a.kind;
  }
  throw ConfigError(fmt::format("unknown algorithm '{}'", text));
}

AdversaryKind parse_adversary(std::string_view text) {
  for (const auto& a : kAdversaries) {
    if (a.name == text) return a.kind;
  }
  throw ConfigError(fmt::format("unknown adversary '{}'", text));
}

SelectionPolicy parse_policy(std::string_view text) {
  if (text == "round-robin") return SelectionPolicy::kRoundRobin;
  if (text == "greedy") return SelectionPolicy::kGreedy;
  throw ConfigError(fmt::format("unknown selection policy '{}'", text));
}

void set_config_value(GameConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "m") {
    cfg.m = parse_integer<std::uint64_t>(key, value);
  } else if (key == "n") {
    cfg.n = parse_integer<Item>(key, value);
  } else if (key == "eps" || key == "epsilon") {
    cfg.epsilon = parse_real(key, value);
  } else if (key == "delta") {
    cfg.delta = parse_real(key, value);
  } else if (key == "c") {
    cfg.c = parse_real(key, value);
  } else if (key == "k") {
    cfg.k = parse_integer<unsigned>(key, value);
  } else if (key == "p") {
    cfg.p = parse_integer<int>(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_real(key, value);
  } else if (key == "alg") {
    cfg.alg = parse_algorithm(value);
  } else if (key == "adv") {
    cfg.adv = parse_adversary(value);
  } else if (key == "tau") {
    cfg.tau = parse_integer<std::size_t>(key, value);
  } else if (key == "policy") {
    cfg.policy = parse_policy(value);
  } else if (key == "salt") {
    cfg.salt = parse_integer<std::uint64_t>(key, value);
  } else if (key == "toggle_item") {
    cfg.toggle_item = parse_integer<Item>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_integer<std::size_t>(key, value);
  } else {
    throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
}

std::string to_config_text(const GameConfig& cfg) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("m", std::to_string(cfg.m));
  line("n", std::to_string(cfg.n));
  line("eps", real(cfg.epsilon));
  line("delta", real(cfg.delta));
  line("c", real(cfg.c));
  line("k", std::to_string(cfg.k));
  line("p", std::to_string(cfg.p));
  line("alpha", real(cfg.alpha));
  line("alg", std::string(to_string(cfg.alg)));
  line("adv", std::string(to_string(cfg.adv)));
  line("tau", std::to_string(cfg.tau));
  line("policy", std::string(to_string(cfg.policy)));
  line("salt", std::to_string(cfg.salt));
  line("toggle_item", std::to_string(cfg.toggle_item));
  line("seed", std::to_string(cfg.seed));
  line("trials", std::to_string(cfg.trials));
  return out;
}

GameConfig parse_config_text(std::string_view text, GameConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

}  // namespace bms
