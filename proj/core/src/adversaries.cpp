#include "bms/adversaries.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace bms {

RoundRandomness::RoundRandomness(std::uint64_t adversary_seed, std::uint64_t round) noexcept
    : rng_(hashing::derive_seed(adversary_seed, round)) {}

std::uint64_t RoundRandomness::next() noexcept { return rng_.at(counter_++); }

std::uint64_t RoundRandomness::uniform(std::uint64_t lo, std::uint64_t hi) noexcept {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t range = span + 1;
  // Lemire's multiply-shift with rejection.
  hashing::u128 prod = static_cast<hashing::u128>(next()) * range;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      prod = static_cast<hashing::u128>(next()) * range;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return lo + static_cast<std::uint64_t>(prod >> 64);
}

double AttackerParams::t3() const { return std::pow(1.0 + epsilon, 3) * base(); }
double AttackerParams::t4() const { return std::pow(1.0 + epsilon, 4) * base(); }

void AttackerParams::validate(bool memoryless) const {
  if (m < 1) throw ConfigError("stream length m must be >= 1");
  if (!(c > 0.0 && c < 1.0)) throw ConfigError(fmt::format("attacker exponent c={} outside (0, 1)", c));
  if (memoryless && !(c < 0.5)) {
    throw ConfigError(fmt::format("memoryless attacker needs c < 1/2, got {}", c));
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ConfigError(fmt::format("epsilon {} outside (0, 1]", epsilon));
  }
  const double bound = 10.0 * std::pow(static_cast<double>(m), 2.0 * c);
  if (!(static_cast<double>(n) > bound)) {
    throw ConfigError(fmt::format("universe n={} must exceed 10 m^(2c) = {:.1f}", n, bound));
  }
}

namespace {

Update type_one(const AttackerParams& p, RoundRandomness& fresh) {
  return Update{fresh.uniform(2, p.n), +1};
}

}  // namespace

Move onebit_next(const AttackerParams& p, std::optional<double> estimate, Direction state,
                 RoundRandomness& fresh) {
  constexpr auto up = static_cast<std::uint64_t>(Direction::kUp);
  constexpr auto down = static_cast<std::uint64_t>(Direction::kDown);
  if (!estimate || *estimate < p.t1()) return {type_one(p, fresh), up};
  const double y = *estimate;
  if (y < p.t2()) return {Update{1, +1}, up};
  if (y >= p.t3()) return {Update{1, -1}, down};
  const auto bit = static_cast<std::uint64_t>(state);
  return {Update{1, state == Direction::kUp ? +1 : -1}, bit};
}

Update memoryless_next(const AttackerParams& p, std::optional<double> estimate,
                       RoundRandomness& fresh) {
  if (!estimate || *estimate < p.t1()) return type_one(p, fresh);
  const double y = *estimate;
  if (y < p.t2()) return Update{1, +1};
  if (y >= p.t4()) return Update{1, -1};
  return Update{1, fresh.coin() ? +1 : -1};
}

OneBitAttacker::OneBitAttacker(const AttackerParams& params) : params_(params) {
  params_.validate(false);
}

Move OneBitAttacker::next(std::optional<double> last_estimate, std::uint64_t persistent,
                          RoundRandomness& fresh) const {
  const Direction state = persistent == 0 ? Direction::kUp : Direction::kDown;
  return onebit_next(params_, last_estimate, state, fresh);
}

MemorylessAttacker::MemorylessAttacker(const AttackerParams& params) : params_(params) {
  params_.validate(true);
}

Move MemorylessAttacker::next(std::optional<double> last_estimate, std::uint64_t,
                              RoundRandomness& fresh) const {
  return {memoryless_next(params_, last_estimate, fresh), 0};
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t estimate_key(std::optional<double> estimate) {
  // Round 1 gets its own key distinct from every double bit pattern's mix.
  return estimate ? std::bit_cast<std::uint64_t>(*estimate) : 0xFFF8DEADBEEF0001ULL;
}

}  // namespace

Update toggle_next(std::optional<double> estimate, Item item) {
  if (!estimate || *estimate == 0.0) return Update{item, +1};
  return Update{item, -1};
}

Update estimate_hash_next(std::optional<double> estimate, Item n, std::uint64_t salt) {
  const std::uint64_t h = hashing::derive_seed(salt, estimate_key(estimate));
  const Item item = 2 + h % (n - 1);
  int bucket = 0;
  if (estimate && *estimate >= 1.0) bucket = static_cast<int>(std::floor(std::log2(*estimate)));
  return Update{item, bucket % 2 == 0 ? +1 : -1};
}

Move cycle_hash_next(std::optional<double> estimate, std::uint64_t state, unsigned k, Item n,
                     std::uint64_t salt) {
  const std::uint64_t h =
      hashing::derive_seed(hashing::derive_seed(salt, state), estimate_key(estimate));
  const Item item = 1 + h % n;
  const int delta = (h >> 63) ? -1 : +1;
  const std::uint64_t states = std::uint64_t{1} << k;
  return {Update{item, delta}, (state + 1) % states};
}

Move ToggleAdversary::next(std::optional<double> last_estimate, std::uint64_t,
                           RoundRandomness&) const {
  return {toggle_next(last_estimate, item_), 0};
}

EstimateHashAdversary::EstimateHashAdversary(Item n, std::uint64_t salt) : n_(n), salt_(salt) {
  if (n < 2) throw ConfigError("estimate-hash adversary needs n >= 2");
}

Move EstimateHashAdversary::next(std::optional<double> last_estimate, std::uint64_t,
                                 RoundRandomness&) const {
  return {estimate_hash_next(last_estimate, n_, salt_), 0};
}

CycleHashAdversary::CycleHashAdversary(unsigned k, Item n, std::uint64_t salt)
    : k_(k), n_(n), salt_(salt) {
  if (k > 16) throw ConfigError(fmt::format("cycle-hash adversary supports k <= 16, got {}", k));
  if (n < 1) throw ConfigError("cycle-hash adversary needs n >= 1");
}

Move CycleHashAdversary::next(std::optional<double> last_estimate, std::uint64_t persistent,
                              RoundRandomness&) const {
  return cycle_hash_next(last_estimate, persistent, k_, n_, salt_);
}

// ---------------------------------------------------------------------------

std::vector<Update> uniform_insertions(std::size_t length, Item n, std::uint64_t seed) {
  std::vector<Update> out;
  out.reserve(length);
  RoundRandomness rng(seed, 0);
  for (std::size_t i = 0; i < length; ++i) out.push_back(Update{rng.uniform(1, n), +1});
  return out;
}

std::vector<Update> random_turnstile(std::size_t length, Item n, std::uint64_t seed) {
  std::vector<Update> out;
  out.reserve(length);
  RoundRandomness rng(seed, 0);
  for (std::size_t i = 0; i < length; ++i) {
    const Item item = rng.uniform(1, n);
    out.push_back(Update{item, rng.coin() ? +1 : -1});
  }
  return out;
}

TauStreamAdversary::TauStreamAdversary(Update first, std::vector<std::vector<Update>> streams,
                                       SelectionPolicy policy, Item n)
    : first_(first), policy_(policy), sent_(n) {
  if (streams.empty()) throw ConfigError("tau-stream adversary needs tau >= 1 streams");
  check_update(first, n);
  for (auto& s : streams) {
    for (const Update& u : s) check_update(u, n);
    queues_.emplace_back(s.begin(), s.end());
  }
}

Update TauStreamAdversary::first_update() {
  sent_.apply(first_);
  last_choice_ = 0;
  return first_;
}

std::size_t TauStreamAdversary::choose(double last_estimate) {
  const std::size_t tau = queues_.size();
  if (policy_ == SelectionPolicy::kRoundRobin) {
    for (std::size_t step = 0; step < tau; ++step) {
      const std::size_t q = (cursor_ + step) % tau;
      if (!queues_[q].empty()) {
        cursor_ = (q + 1) % tau;
        return q;
      }
    }
  } else {
    std::size_t best = tau;
    double best_gap = -1.0;
    const double f2 = static_cast<double>(sent_.sum_squares());
    for (std::size_t q = 0; q < tau; ++q) {
      if (queues_[q].empty()) continue;
      const Update& head = queues_[q].front();
      const double before = static_cast<double>(sent_[head.item]);
      const double after_f2 = f2 + 2.0 * head.delta * before + 1.0;
      const double gap = std::abs(after_f2 - last_estimate);
      if (gap > best_gap) {
        best_gap = gap;
        best = q;
      }
    }
    if (best < tau) return best;
  }
  throw ProtocolError("tau-stream adversary ran out of pre-committed updates");
}

Update TauStreamAdversary::next(double last_estimate) {
  const std::size_t q = choose(last_estimate);
  const Update u = queues_[q].front();
  queues_[q].pop_front();
  sent_.apply(u);
  ++pops_;
  last_choice_ = q;
  return u;
}

TauStreamAdversary make_tau_stream_adversary(std::size_t tau, std::uint64_t m, Item n,
                                             SelectionPolicy policy, std::uint64_t seed) {
  if (tau < 1) throw ConfigError("tau must be >= 1");
  if (m < 1) throw ConfigError("stream length m must be >= 1");
  const Update first = uniform_insertions(1, n, hashing::derive_seed(seed, 0))[0];
  std::vector<std::vector<Update>> streams;
  streams.reserve(tau);
  for (std::size_t q = 0; q < tau; ++q) {
    streams.push_back(uniform_insertions(m - 1, n, hashing::derive_seed(seed, q + 1)));
  }
  return TauStreamAdversary(first, std::move(streams), policy, n);
}

TauStreamAdversary make_oblivious_replayer(const std::vector<Update>& stream, Item n) {
  if (stream.empty()) throw ConfigError("oblivious replay needs a nonempty stream");
  std::vector<std::vector<Update>> rest{std::vector<Update>(stream.begin() + 1, stream.end())};
  return TauStreamAdversary(stream.front(), std::move(rest), SelectionPolicy::kRoundRobin, n);
}

}  // namespace bms
