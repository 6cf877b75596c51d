#ifndef EXTREMAL_SYMBOLIC_HPP
#define EXTREMAL_SYMBOLIC_HPP

#include "extremal/full_branch_map.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace extremal {

using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultDepth = 64;

/// Draws branch indices with probabilities equal to the branch widths, from
/// one 64-bit word per digit.
class DigitSampler {
public:
  explicit DigitSampler(const FullBranchMap& map);

  std::size_t operator()(Rng& rng) const { return from_bits(rng()); }
  std::size_t from_bits(std::uint64_t u) const {
    std::size_t i = 0;
    while (i + 1 < thresholds_.size() && u >= thresholds_[i]) ++i;
    return i;
  }
  std::size_t size() const { return thresholds_.size(); }

private:
  // thresholds_[i] = floor(2^64 · (w_0 + ... + w_i)); the last entry is unused.
  std::vector<std::uint64_t> thresholds_;
};

/// Lebesgue-typical orbit represented by its itinerary. Point k is rebuilt
/// from digits k .. k+depth−1.
class SymbolicOrbit {
public:
  SymbolicOrbit(const FullBranchMap& map, std::vector<std::size_t> digits, std::size_t depth);

  const std::vector<std::size_t>& digits() const { return digits_; }
  std::size_t depth() const { return depth_; }
  /// Number of reconstructible points.
  std::size_t horizon() const { return digits_.size() - depth_ + 1; }
  /// Point at time k: the midpoint of its depth-cylinder.
  double point(std::size_t k) const;

private:
  const FullBranchMap* map_;
  std::vector<std::size_t> digits_;
  std::size_t depth_;
};

SymbolicOrbit symbolic_sample(const FullBranchMap& map, Rng& rng, std::size_t horizon,
                              std::size_t depth = kDefaultDepth);

} // namespace extremal

#endif
