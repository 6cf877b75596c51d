#ifndef EXTREMAL_MONTE_CARLO_HPP
#define EXTREMAL_MONTE_CARLO_HPP

#include "extremal/ecdf.hpp"
#include "extremal/full_branch_map.hpp"
#include "extremal/observable.hpp"
#include "extremal/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace extremal {

/// Trials run the orbit backwards: y_0 is Lebesgue distributed and
/// y_{m+1} = T_d^{-1}(y_m) with digit d drawn by branch width, so
/// (y_{h−1}, ..., y_0) is a forward orbit from a Lebesgue point. Both the
/// running maximum over a window and the entrance time into a ball only
/// depend on the window, so the reversed order is harmless. The doubling
/// map runs on 64-bit fixed point; other affine maps use doubles.
struct RunOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
};

/// ℙ(M_n ≤ u_n) with n·ℙ(U(u_n)) = τ. One grid entry.
ECDF estimate_evl(const FullBranchMap& map, const Observable& obs, std::size_t n, const Rational& tau,
                  const RunOptions& run);
/// Same for several τ sharing the trials; the grid keeps the given order.
ECDF estimate_evl_multi(const FullBranchMap& map, const Observable& obs, std::size_t n,
                        const std::vector<Rational>& taus, const RunOptions& run);

/// Time horizon of HTS and escape trials for a hole of measure pb.
std::size_t hts_horizon(double pb);

/// ℙ(r_B > τ/ℙ(B)) for B the circle ball of radius ε around ζ, per τ.
ECDF estimate_hts(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                  const std::vector<double>& taus, const RunOptions& run);

/// Counts of the entrance time into B = ball(ζ, ε): entry t is the number
/// of trials with r_B > t, for t = 0..horizon. Trials that never enter are
/// counted in `censored`.
struct SurvivalCounts {
  std::vector<std::uint64_t> alive;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
};

SurvivalCounts survival_counts(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                               std::size_t horizon, const RunOptions& run);

} // namespace extremal

#endif
