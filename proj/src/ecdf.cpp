#include "extremal/ecdf.hpp"

#include "extremal/errors.hpp"

#include <cmath>

namespace extremal {

double wilson_half_width(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw PreconditionError("no trials");
  if (successes > trials) throw PreconditionError("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

double wilson_center(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw PreconditionError("no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  return (p + z * z / (2.0 * n)) / (1.0 + z * z / n);
}

void ECDF::finalize() {
  estimates.assign(counts.size(), 0.0);
  half_widths.assign(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    estimates[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
    half_widths[i] = wilson_half_width(counts[i], trials);
  }
}

} // namespace extremal
