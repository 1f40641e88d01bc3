#include "bms/net.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "bms/core.hpp"

namespace bms {

EstimateNet::EstimateNet(double alpha, double epsilon) : alpha_(alpha), epsilon_(epsilon) {
  if (!(alpha >= 2.0)) throw ConfigError(fmt::format("net ceiling alpha {} < 2", alpha));
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ConfigError(fmt::format("net granularity {} outside (0, 1]", epsilon));
  }
  const double ratio = 1.0 + epsilon;
  for (double p = 1.0; p <= alpha; p *= ratio) points_.push_back(p);
  if (points_.back() != alpha) points_.push_back(alpha);
}

double EstimateNet::round(double y) const {
  if (!(y >= 1.0)) return 0.0;
  if (y > alpha_) return alpha_;
  return *std::lower_bound(points_.begin(), points_.end(), y);
}

std::size_t EstimateNet::vocabulary_index(double value) const {
  if (value == 0.0) return 0;
  auto it = std::lower_bound(points_.begin(), points_.end(), value);
  if (it == points_.end() || *it != value) {
    throw DomainError(fmt::format("{} is not a net output", value));
  }
  return static_cast<std::size_t>(it - points_.begin()) + 1;
}

bool EstimateNet::contains(double value) const {
  if (value == 0.0) return true;
  return std::binary_search(points_.begin(), points_.end(), value);
}

EstimateNet build_net(double alpha, double epsilon) { return EstimateNet(alpha, epsilon); }

double round_to_net(const EstimateNet& net, double y) { return net.round(y); }

}  // namespace bms
