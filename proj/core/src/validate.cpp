#include "bms/validate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "bms/adversaries.hpp"
#include "bms/net.hpp"
#include "bms/oblivious.hpp"

namespace bms {

namespace {

double unit_real(RoundRandomness& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

void note_failure(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.detail = what;
}

}  // namespace

SuiteResult validate_net(const std::vector<double>& alphas, const std::vector<double>& epsilons,
                         std::size_t samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "net";
  RoundRandomness rng(seed, 0);
  for (const double alpha : alphas) {
    for (const double eps : epsilons) {
      const EstimateNet net(alpha, eps);
      const auto bound =
          2 + static_cast<std::size_t>(std::ceil(std::log(alpha) / std::log1p(eps)));
      ++r.checks;
      if (net.size() + 1 > bound) {
        note_failure(r, fmt::format("alpha={} eps={}: {} points exceed size bound {}", alpha, eps,
                                    net.size(), bound));
      }
      for (std::size_t s = 0; s < samples; ++s) {
        const double x = std::min(alpha, 1.0 + (alpha - 1.0) * unit_real(rng));
        const double y = net.round(x);
        ++r.checks;
        if (!(x <= y && y <= (1.0 + eps) * x)) {
          note_failure(r, fmt::format("alpha={} eps={}: x={:.17g} rounds to {:.17g}", alpha, eps,
                                      x, y));
        }
      }
    }
  }
  if (r.failures == 0) r.detail = fmt::format("{} checks passed", r.checks);
  return r;
}

SuiteResult validate_order_invariance(std::size_t streams, std::size_t permutations,
                                      std::size_t max_length, std::uint64_t seed) {
  SuiteResult r;
  r.name = "order-invariance";
  for (std::size_t s = 0; s < streams; ++s) {
    RoundRandomness rng(seed, s);
    const std::size_t length = rng.uniform(1, max_length);
    const Item n = rng.uniform(2, 64);
    std::vector<Update> stream = random_turnstile(length, n, rng.next());
    const std::uint64_t sketch_seed = rng.next();

    SketchState reference = sketch_init(0.5, sketch_seed);
    for (const Update& u : stream) reference.update(u);

    for (std::size_t p = 0; p < permutations; ++p) {
      // Fisher-Yates with the suite's own generator.
      for (std::size_t i = stream.size(); i > 1; --i) {
        std::swap(stream[i - 1], stream[rng.uniform(0, i - 1)]);
      }
      SketchState shuffled = sketch_init(0.5, sketch_seed);
      for (const Update& u : stream) shuffled.update(u);
      ++r.checks;
      if (!(shuffled == reference)) {
        note_failure(r, fmt::format("stream {} permutation {}: sketch states differ", s, p));
      }
    }
  }
  if (r.failures == 0) r.detail = fmt::format("{} comparisons identical", r.checks);
  return r;
}

SuiteResult validate_amplification(double delta, double copy_failure, std::size_t trials,
                                   std::uint64_t seed) {
  SuiteResult r;
  r.name = "amplification";
  const std::size_t copies = amplification_copies(delta);
  constexpr double kTruth = 1000.0;
  constexpr double kEps = 0.5;
  std::vector<double> estimates(copies);
  std::size_t worst = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RoundRandomness rng(seed, trial);
    std::size_t failed = 0;
    for (double& e : estimates) {
      if (unit_real(rng) < copy_failure) {
        // A failed copy lands on either side of the window.
        e = rng.coin() ? kTruth * 0.5 : kTruth * (1.0 + 2.0 * kEps);
        ++failed;
      } else {
        e = kTruth * (1.0 + kEps * unit_real(rng));
      }
    }
    worst = std::max(worst, failed);
    ++r.checks;
    if (!is_correct_estimate(kTruth, median_amplify(estimates), kEps)) {
      note_failure(r, fmt::format("trial {}: median of {} copies wrong with {} failures", trial,
                                  copies, failed));
    }
  }
  if (r.failures == 0) {
    r.detail = fmt::format("{} trials, t={}, at most {} failed copies", r.checks, copies, worst);
  }
  return r;
}

}  // namespace bms
