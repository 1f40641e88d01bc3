#pragma once

// Multi-m scaling experiments and log-log exponent fits.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bms/arena.hpp"

namespace bms {

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  ///< natural log of the prefactor
  std::vector<double> residuals;  ///< in log space, one per point
};

/// Least-squares fit of log y = intercept + exponent * log x. Needs at
/// least two points with positive coordinates and distinct x.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct SweepPoint {
  std::uint64_t m = 0;
  double median_flip_number = 0.0;
  double median_min_density = 0.0;
  std::vector<std::size_t> flip_numbers;  ///< by trial index
  std::vector<std::size_t> min_densities;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  PowerLawFit flip_fit;
  PowerLawFit density_fit;
};

/// Trial seed: derive_seed(derive_seed(base.seed, m), trial).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t m, std::uint64_t trial) noexcept;

/// Runs `trials` games for each m (n resolved per m unless base.n is set).
/// Throws ConfigError for fewer than three m values.
SweepReport scaling_sweep(const GameConfig& base, const std::vector<std::uint64_t>& m_values,
                          std::size_t trials);

}  // namespace bms
