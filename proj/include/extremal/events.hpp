#ifndef EXTREMAL_EVENTS_HPP
#define EXTREMAL_EVENTS_HPP

#include "extremal/full_branch_map.hpp"
#include "extremal/interval_set.hpp"
#include "extremal/observable.hpp"
#include "extremal/rational.hpp"

#include <cstddef>
#include <optional>

namespace extremal {

inline constexpr std::size_t kDefaultComponentBudget = 1000000;
inline constexpr std::size_t kDefaultCertificationHorizon = 4096;

/// Threshold u_n making n·ℙ(U(u_n)) = τ hold exactly: U is the circle ball
/// around ζ of radius τ/(2n).
struct ThresholdSchedule {
  Rational tau;
  std::size_t n = 0;
  Rational radius;
  Rational p;  // ℙ(U(u_n)) = τ/n
  double u = 0.0;
};

ThresholdSchedule threshold_for(const Observable& obs, std::size_t n, const Rational& tau);

/// U(u) = {φ > u}. The radius ρ(u) is a double; it is made exact as given.
IntervalUnion<Rational> exceedance_set(const Observable& obs, double u);
/// U for an exact radius.
IntervalUnion<Rational> exceedance_ball(const Observable& obs, const Rational& radius);

/// A^(q) = U ∩ ⋂_{i=1..q} T^{-i}(U^c).
IntervalUnion<Rational> annulus_set(const FullBranchMap& map, const IntervalUnion<Rational>& u,
                                    std::size_t q);
IntervalUnion<Rational> annulus_set(const FullBranchMap& map, const Observable& obs, double u,
                                    std::size_t q);

/// 𝒲_{s,ℓ}(B) = ⋂_{i=s}^{s+ℓ−1} T^{-i}(B^c); the full space when ℓ = 0.
IntervalUnion<Rational> survivor_set(const FullBranchMap& map, const IntervalUnion<Rational>& b,
                                     std::size_t s, std::size_t ell,
                                     std::size_t budget = kDefaultComponentBudget);

/// θ_n = ℙ(A^(q)) / ℙ(U).
Rational theta_n(const FullBranchMap& map, const IntervalUnion<Rational>& u, std::size_t q);
Rational theta_n(const FullBranchMap& map, const Observable& obs, double u, std::size_t q);

struct ThetaLimit {
  std::size_t q = 0;
  Rational theta = 1;
  bool periodic = false;
  Rational multiplier = 1;  // |DF^p(ζ)| when periodic
};

/// Periodic ζ of prime period p ≤ cap: (p, 1 − 1/|DF^p(ζ)|). ζ whose orbit
/// falls into a cycle avoiding ζ: (0, 1). Anything else within the
/// certification horizon is inconclusive and throws PreconditionError.
ThetaLimit theta_limit(const FullBranchMap& map, const Observable& obs,
                       std::size_t cap = 20,
                       std::size_t certification_horizon = kDefaultCertificationHorizon);

/// R(A), or nullopt when no return happens within the horizon.
std::optional<std::size_t> first_return_R(const FullBranchMap& map, const IntervalUnion<Rational>& a,
                                          std::size_t horizon);

enum class DprimeRange {
  beyond_q,  // j = q+1 .. ⌊n/k⌋−1
  from_one   // j = 1 .. ⌊n/k⌋
};

/// n·Σ_j ℙ(A^(q)_n ∩ T^{-j}A^(q)_n) with u_n from threshold_for(obs, n, τ).
Rational dprime_sum(const FullBranchMap& map, const Observable& obs, std::size_t n, std::size_t q,
                    std::size_t k, const Rational& tau = Rational(1),
                    DprimeRange range = DprimeRange::beyond_q);
/// Same sum for a given A^(q).
Rational dprime_sum(const FullBranchMap& map, const IntervalUnion<Rational>& a, std::size_t n,
                    std::size_t q, std::size_t k, DprimeRange range = DprimeRange::beyond_q);

/// ℙ(M_n ≤ u) = ℙ(𝒲_{0,n}(U)).
Rational exact_evl_prob(const FullBranchMap& map, const IntervalUnion<Rational>& u, std::size_t n,
                        std::size_t budget = kDefaultComponentBudget);
Rational exact_evl_prob(const FullBranchMap& map, const Observable& obs, std::size_t n, double u,
                        std::size_t budget = kDefaultComponentBudget);

/// ℙ(r_B > t) = ℙ(T^{-1}𝒲_{0,t}(B)).
Rational exact_hts_prob(const FullBranchMap& map, const IntervalUnion<Rational>& b, std::size_t t,
                        std::size_t budget = kDefaultComponentBudget);

} // namespace extremal

#endif
