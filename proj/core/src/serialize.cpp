#include "bms/serialize.hpp"

#include <iterator>

#include <fmt/format.h>

namespace bms {

std::string transcript_csv(const GameTranscript& t) {
  std::string out = "round,item,delta,true_value,estimate,density,correct,persistent_state\n";
  out.reserve(out.size() + t.rounds.size() * 48);
  auto it = std::back_inserter(out);
  for (const auto& r : t.rounds) {
    fmt::format_to(it, "{},{},{},{:.17g},{:.17g},{},{},{}\n", r.round, r.update.item,
                   r.update.delta, r.true_value, r.estimate, r.density, r.correct ? 1 : 0,
                   r.persistent_state);
  }
  return out;
}

std::string summary_json(const GameTranscript& t, bool include_timing) {
  const GameSummary& s = t.summary;
  const GameConfig& c = t.config;
  const std::string elapsed = include_timing ? fmt::format("{:.17g}", s.elapsed_ms) : "null";
  return fmt::format(
      "{{\n"
      "  \"success\": {},\n"
      "  \"flip_number\": {},\n"
      "  \"flip_number_estimates\": {},\n"
      "  \"min_density_after_burnin\": {},\n"
      "  \"type1_count\": {},\n"
      "  \"distinct_items\": {},\n"
      "  \"m\": {},\n"
      "  \"n\": {},\n"
      "  \"epsilon\": {:.17g},\n"
      "  \"c\": {:.17g},\n"
      "  \"k\": {},\n"
      "  \"seed\": {},\n"
      "  \"elapsed_ms\": {}\n"
      "}}\n",
      s.success, s.flip_number, s.flip_number_estimates, s.min_density_after_burnin,
      s.type1_count, s.distinct_items, c.m, c.resolved_n(), c.epsilon, c.c, c.k, c.seed, elapsed);
}

}  // namespace bms
