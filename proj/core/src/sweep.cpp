#include "bms/sweep.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bms/hashing.hpp"

namespace bms {

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("power-law fit needs at least two (x, y) pairs");
  }
  const auto count = static_cast<double>(x.size());
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("power-law fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("power-law fit needs distinct x values");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residuals.push_back(ly[i] - (fit.intercept + fit.exponent * lx[i]));
  }
  return fit;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t m, std::uint64_t trial) noexcept {
  return hashing::derive_seed(hashing::derive_seed(master, m), trial);
}

namespace {

double median_of(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[mid]);
  return 0.5 * (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid]));
}

}  // namespace

SweepReport scaling_sweep(const GameConfig& base, const std::vector<std::uint64_t>& m_values,
                          std::size_t trials) {
  if (m_values.size() < 3) {
    throw ConfigError(fmt::format("a sweep needs at least 3 values of m, got {}", m_values.size()));
  }
  if (trials < 1) throw ConfigError("a sweep needs at least one trial per m");

  SweepReport report;
  std::vector<double> ms, flips, densities;
  for (const std::uint64_t m : m_values) {
    SweepPoint point;
    point.m = m;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      GameConfig cfg = base;
      cfg.m = m;
      cfg.seed = trial_seed(base.seed, m, trial);
      cfg.trials = 1;
      auto algorithm = make_algorithm(cfg);
      auto adversary = make_adversary(cfg);
      const GameTranscript t = play_game(cfg, *algorithm, *adversary);
      point.flip_numbers.push_back(t.summary.flip_number);
      point.min_densities.push_back(t.summary.min_density_after_burnin);
    }
    point.median_flip_number = median_of(point.flip_numbers);
    point.median_min_density = median_of(point.min_densities);
    ms.push_back(static_cast<double>(m));
    flips.push_back(point.median_flip_number);
    densities.push_back(point.median_min_density);
    report.points.push_back(std::move(point));
  }
  report.flip_fit = fit_power_law(ms, flips);
  report.density_fit = fit_power_law(ms, densities);
  return report;
}

}  // namespace bms
