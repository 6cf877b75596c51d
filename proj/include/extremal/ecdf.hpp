#ifndef EXTREMAL_ECDF_HPP
#define EXTREMAL_ECDF_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace extremal {

inline constexpr double kWilsonZ = 1.96;

/// Half-width of the Wilson score interval for `successes` out of `trials`.
double wilson_half_width(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ);
/// Center of the Wilson interval.
double wilson_center(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ);

/// Survival estimates on a grid of τ (or t) values.
struct ECDF {
  std::vector<double> grid;
  std::vector<double> estimates;
  std::vector<std::uint64_t> counts;  // surviving trials per grid point
  std::vector<double> half_widths;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;  // trials that never hit within the horizon
  std::uint64_t seed = 0;

  /// Fills estimates and half-widths from counts.
  void finalize();
};

} // namespace extremal

#endif
