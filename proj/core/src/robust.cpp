#include "bms/robust.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bms/hashing.hpp"
#include "bms/oblivious.hpp"

namespace bms {

Tracker::Tracker(Item n, EstimateNet net, int moment_exponent)
    : vector_(n), net_(std::move(net)), moment_exponent_(moment_exponent) {
  if (moment_exponent != 1 && moment_exponent != 2) {
    throw ConfigError(fmt::format("tracker moment exponent {} not in {{1, 2}}", moment_exponent));
  }
}

double Tracker::process(const Update& u) {
  vector_.apply(u);
  seen_.insert(u.item);
  return net_.round(exact_moment(vector_, moment_exponent_));
}

double tracker_step(Tracker& state, const Update& u) { return state.process(u); }

std::size_t tau_for_bounded_memory(unsigned k, const EstimateNet& net) {
  if (k > 32) throw ConfigError(fmt::format("persistent memory of {} bits is too large", k));
  return (net.size() + 1) << k;
}

std::size_t robust_copies(std::uint64_t m, std::size_t tau, double delta) {
  if (m < 1) throw ConfigError("stream length m must be >= 1");
  if (tau < 1) throw ConfigError("tau must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError(fmt::format("failure probability {} outside (0, 1)", delta));
  }
  const double exponent =
      static_cast<double>(tau) * std::log(static_cast<double>(m)) + std::log(1.0 / delta);
  return static_cast<std::size_t>(stable_ceil(12.0 * exponent));
}

std::uint64_t copy_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return master_seed ^ hashing::mix64(index);
}

namespace {

const RobustParams& validated(const RobustParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
    throw ConfigError(fmt::format("robust epsilon {} outside (0, 1)", p.epsilon));
  }
  if (!(p.delta > 0.0 && p.delta < 0.1)) {
    throw ConfigError(fmt::format("robust delta {} outside (0, 1/10)", p.delta));
  }
  if (p.m < 1) throw ConfigError("stream length m must be >= 1");
  return p;
}

std::vector<std::uint64_t> seeds_for(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = copy_seed(master, i);
  return seeds;
}

}  // namespace

RobustEstimator::RobustEstimator(const RobustParams& params)
    : params_(validated(params)),
      net_(params.alpha, params.epsilon / 3.0),
      tau_(tau_for_bounded_memory(params.k, net_)),
      bank_(params.epsilon / 9.0,
            seeds_for(params.master_seed, robust_copies(params.m, tau_, params.delta))) {}

double RobustEstimator::process(const Update& u) {
  if (updates_seen_ >= params_.m) {
    throw ProtocolError(fmt::format("robust estimator configured for {} updates", params_.m));
  }
  ++updates_seen_;
  bank_.update(u);
  last_median_ = bank_.median_estimate();
  last_output_ = net_.round(last_median_);
  return last_output_;
}

RobustEstimator robust_init(unsigned k, double epsilon, double delta, std::uint64_t m,
                            double alpha, std::uint64_t master_seed) {
  return RobustEstimator(RobustParams{k, epsilon, delta, m, alpha, master_seed});
}

double robust_step(RobustEstimator& state, const Update& u) { return state.process(u); }

AmplifiedSketch::AmplifiedSketch(double epsilon, double delta, std::uint64_t seed)
    : bank_(epsilon / 3.0, seeds_for(seed, amplification_copies(delta))) {}

double AmplifiedSketch::process(const Update& u) {
  bank_.update(u);
  return bank_.median_estimate();
}

}  // namespace bms
