#ifndef EXTREMAL_ESCAPE_HPP
#define EXTREMAL_ESCAPE_HPP

#include "extremal/bounds.hpp"
#include "extremal/decay.hpp"
#include "extremal/full_branch_map.hpp"
#include "extremal/interval_set.hpp"
#include "extremal/monte_carlo.hpp"
#include "extremal/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace extremal {

inline constexpr std::uint64_t kMinWindowSurvivors = 100;
inline constexpr std::size_t kDefaultUlamBins = 25600;

/// Least-squares fit of −log ℙ(r_B > t) against t.
struct EscapeFit {
  std::vector<double> t;
  std::vector<double> log_survival;
  double slope = 0.0;  // escape rate per step
  std::size_t window_begin = 0;
  std::size_t window_end = 0;  // inclusive
  double residual = 0.0;
  double theta_hat = 1.0;
  double pb = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Escape rate through B = ball(ζ, ε). The window starts at ⌈5/(θ̂·PB)⌉ and
/// ends at the last t with at least 100 survivors. θ̂ defaults to the
/// limit index of ζ, or 1 when ζ is not certified.
EscapeFit estimate_escape_rate(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                               const RunOptions& run, std::optional<double> theta_hat = std::nullopt);

/// −log of the spectral radius of the Ulam matrix with the hole bins
/// removed. +inf when the hole is everything.
double ulam_escape_oracle(const FullBranchMap& map, const IntervalUnion<Rational>& hole,
                          std::size_t bins = kDefaultUlamBins);

/// Inputs of the escape-rate window for B = ball(ζ, ε) and its q-annulus A:
/// (k,t) from the HTS optimizer, ℓ, R(A), M = ‖1_A‖_BV, Υ_A and L = 1 − ℓ·PA.
struct EscapeWindowInputs {
  std::size_t k = 0, t = 0, ell = 0, r = 0;
  double pa = 0.0, m = 0.0, upsilon = 0.0, l = 1.0;
  EscapeWindow window;
};

EscapeWindowInputs escape_window_inputs(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                                        std::size_t q, double theta, const DecayModel& gamma);

} // namespace extremal

#endif
