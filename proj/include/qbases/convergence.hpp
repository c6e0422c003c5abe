#pragma once

// Least-squares order estimation: slope of log(residual) against log(t).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qbases/errors.hpp"

namespace qbases {

/// Residuals at or below this are never used in a fit.
inline constexpr double kExactResidual = 1e-14;

/// Relative round-off floor: 64 ulp of the compared objects.
inline constexpr double kRoundoffFloor = 64.0 * std::numeric_limits<double>::epsilon();

struct ConvergenceFit {
  std::vector<double> t;
  std::vector<double> residuals;
  /// Empty when fewer than two residuals lie above the round-off floor.
  std::optional<double> slope;
  /// Residuals at or below this were excluded from the fit.
  double noise_floor = 0.0;

  bool exact() const { return !slope.has_value(); }
  double max_residual() const { return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end()); }
};

/// At least two positive points spanning two decades.
inline void validate_sequence(std::span<const double> t) {
  if (t.size() < 2) throw InvalidSequence("a slope fit needs at least two points");
  for (double v : t)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidSequence("sequence values must be positive and finite");
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  if (*hi / *lo < 100.0 * (1.0 - 1e-9)) throw InvalidSequence("sequence must span at least two decades");
}

inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Points with residual at or below `noise_floor` (round-off level of the
/// compared objects) are left out of the fit. If fewer than two points remain
/// the comparison is exact to working precision and no slope is reported.
inline ConvergenceFit fit_order(std::span<const double> t, std::span<const double> residuals,
                                double noise_floor = kExactResidual) {
  validate_sequence(t);
  if (residuals.size() != t.size()) throw InvalidSequence("residual count does not match the sequence");
  const double floor = std::max(noise_floor, kExactResidual);
  ConvergenceFit fit{{t.begin(), t.end()}, {residuals.begin(), residuals.end()}, std::nullopt, floor};
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (residuals[i] > floor) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(residuals[i]));
    }
  }
  if (lx.size() < 2) return fit;
  fit.slope = least_squares_slope(lx, ly);
  return fit;
}

/// Default sequence {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}.
inline std::vector<double> default_t_sequence() { return {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}; }

}  // namespace qbases
