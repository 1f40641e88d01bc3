#pragma once

// Invariant suites behind the `validate` subcommand and the acceptance gate.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bms {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;  ///< first failure, or a one-line summary

  bool passed() const noexcept { return failures == 0 && checks > 0; }
};

/// Samples x uniformly from [1, alpha] for every (alpha, eps) pair and
/// checks x <= round(x) <= (1+eps) x plus |points| + 1 <= 2 + ceil(log alpha / log(1+eps)).
SuiteResult validate_net(const std::vector<double>& alphas, const std::vector<double>& epsilons,
                         std::size_t samples, std::uint64_t seed);

/// Random turnstile streams (length <= max_length) are fed to a sketch in
/// their original order and in `permutations` shuffles; final states must
/// compare equal.
SuiteResult validate_order_invariance(std::size_t streams, std::size_t permutations,
                                      std::size_t max_length, std::uint64_t seed);

/// Each of amplification_copies(delta) copies fails independently with
/// probability copy_failure (estimate pushed outside the one-sided window);
/// counts trials in which the median is incorrect.
SuiteResult validate_amplification(double delta, double copy_failure, std::size_t trials,
                                   std::uint64_t seed);

}  // namespace bms
