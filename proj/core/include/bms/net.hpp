#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bms {

/// Multiplicative net over [1, alpha]: points {(1+eps)^i <= alpha} U {alpha},
/// plus an implicit zero. Every x in [1, alpha] rounds up to a point within a
/// factor 1 + eps. Immutable after construction.
class EstimateNet {
 public:
  /// Throws ConfigError unless alpha >= 2 and eps in (0, 1].
  EstimateNet(double alpha, double epsilon);

  double alpha() const noexcept { return alpha_; }
  double epsilon() const noexcept { return epsilon_; }
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// y < 1 -> 0; y in [1, alpha] -> smallest point >= y; y > alpha -> alpha.
  double round(double y) const;

  /// Position of an output in the vocabulary {0} U points: 0 for zero,
  /// i + 1 for points()[i]. Throws DomainError for values not in it.
  std::size_t vocabulary_index(double value) const;

  bool contains(double value) const;

 private:
  double alpha_;
  double epsilon_;
  std::vector<double> points_;
};

EstimateNet build_net(double alpha, double epsilon);

double round_to_net(const EstimateNet& net, double y);

}  // namespace bms
