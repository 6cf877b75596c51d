#ifndef EXTREMAL_DECAY_HPP
#define EXTREMAL_DECAY_HPP

#include "extremal/full_branch_map.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace extremal {

/// Correlation decay rate γ(t) against L^1.
class DecayModel {
public:
  enum class Kind { exponential, tabulated, zero };

  /// γ(t) = c0·λ^t.
  static DecayModel exponential(double c0, double lambda, double delta = 1.0);
  /// γ(t) = values[t]; zero beyond the table.
  static DecayModel tabulated(std::vector<double> values, double delta = 1.0);
  static DecayModel zero(double delta = 1.0);
  /// c0 = 4, λ = largest branch width.
  static DecayModel for_map(const FullBranchMap& map, double delta = 1.0);

  Kind kind() const { return kind_; }
  double c0() const { return c0_; }
  double lambda() const { return lambda_; }
  /// Summability exponent: n^{1+δ}γ(n) → 0.
  double delta() const { return delta_; }
  const std::vector<double>& table() const { return table_; }
  std::string describe() const;

  double operator()(std::size_t t) const;
  /// Σ_{j=from}^{to−1} γ(j); zero when the range is empty.
  double range_sum(std::size_t from, std::size_t to) const;
  /// Σ_{j≥from} γ(j).
  double tail_sum(std::size_t from) const;

private:
  Kind kind_ = Kind::zero;
  double c0_ = 0.0;
  double lambda_ = 0.0;
  double delta_ = 1.0;
  std::vector<double> table_;
};

} // namespace extremal

#endif
