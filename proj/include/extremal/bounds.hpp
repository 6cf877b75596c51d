#ifndef EXTREMAL_BOUNDS_HPP
#define EXTREMAL_BOUNDS_HPP

#include "extremal/decay.hpp"
#include "extremal/error_budget.hpp"
#include "extremal/full_branch_map.hpp"
#include "extremal/interval_set.hpp"
#include "extremal/rational.hpp"

#include <cstddef>

namespace extremal {

/// Ξ_{A,s} = M·s·γ(t) + M(s−R)[PA + Mγ(t)]·Σ_{q=R}^{s−1}γ(q) + s(s−R)[PA² + PA·Mγ(t)].
/// The (s−R) factors clamp at zero.
double xi(double pa, double m, std::size_t s, std::size_t t, std::size_t r, const DecayModel& gamma);

/// Υ_A = t(PA + Mγ(t)) + Ξ_{A,ℓ}.
double upsilon(double pa, double m, std::size_t ell, std::size_t t, std::size_t r,
               const DecayModel& gamma);

struct BlockingParams {
  std::size_t k = 0;
  std::size_t t = 0;
  double objective = 0.0;
};

/// kt·PA + nγ(t)(1 + n·PA/k) + (n·PA)²/k.
double evl_objective(std::size_t n, double pa, const DecayModel& gamma, std::size_t k, std::size_t t);
/// kt·PB + γ(t)/PB + 1/k.
double hts_objective(double pb, const DecayModel& gamma, std::size_t k, std::size_t t);

/// Minimizer of evl_objective over integers k,t ≥ 1 with kt < n. Ties go to
/// the smaller t, then the smaller k.
BlockingParams optimize_kt_evl(std::size_t n, double pa, const DecayModel& gamma);
/// Minimizer of hts_objective over integers k,t ≥ 1 with kt·PB < 1.
BlockingParams optimize_kt_hts(double pb, const DecayModel& gamma);

/// t' = n^{1/(1+δ)}, k' = n^{δ/(2+2δ)}, rounded down and kept ≥ 1.
BlockingParams reference_schedule_evl(std::size_t n, double pa, const DecayModel& gamma);

/// Largest k with k·t·PB < 1 (0 if none).
std::size_t hts_max_k(double pb, std::size_t t);

struct BracketInputs {
  double tau = 1.0;
  std::size_t n = 1;
  std::size_t q = 0;
  std::size_t k = 1;
  std::size_t t = 1;
  double pu = 0.0;
  double pa = 0.0;
  double gamma_mix = 0.0;
  double dprime = 0.0;
};

/// EVL bracket with the finite-n index θ_n = PA/PU: terms gap, mixing,
/// recurrence, poisson, annulus.
ErrorBudget evl_bracket(const BracketInputs& in);
/// Same with the limit index θ: adds the index term e^{−θτ}|θ_n − θ|τ.
ErrorBudget evl_limit_bracket(const BracketInputs& in, double theta);

/// Sharp EVL bracket. Requires ℓ = ⌊n/k⌋ − t ≥ 1.
ErrorBudget sharp_evl_bracket(double tau, std::size_t n, double theta, double pa, std::size_t k,
                              std::size_t t, std::size_t r, const DecayModel& gamma);

/// ℓ for the HTS bracket: ⌊⌊1/PB⌋/k⌋ − t (may be ≤ 0).
long hts_ell(double pb, std::size_t k, std::size_t t);

/// Sharp HTS bracket. Requires L = 1 − ℓ·PA ∈ (0,1].
ErrorBudget sharp_hts_bracket(double tau, double pb, double pa, double theta, std::size_t k,
                              std::size_t t, std::size_t r, std::size_t ell, double m,
                              const DecayModel& gamma);

struct EscapeWindow {
  double lower = 0.0;
  double nominal = 0.0;
  bool degenerate = false;
};

/// lower = (θ − kΥ/L)·PB, nominal = θ·PB; degenerate when kΥ/L ≥ θ.
EscapeWindow escape_rate_window(double theta, std::size_t k, double upsilon_a, double l, double pb);

struct ExpApprox {
  double approx = 0.0;
  double defect = 0.0;
};

/// approx = e^x(1 − x²/(2n) + x³(8+3x)/(24n²)), defect = |(1+x/n)^n − approx|.
ExpApprox exp_approx_error(double x, double n);

/// kΥ(L+Υ)^{k−1}(1+L+Υ).
double block_estimate(std::size_t k, double upsilon_a, double l);
/// 5kΥL^{k−1}; requires kΥ < L/2.
double block_estimate_small(std::size_t k, double upsilon_a, double l);
/// Fractional-time variant with β = τk: (3+Υ)⌈τk⌉Υ(L+Υ)^{⌊τk⌋−1}, or Υ when
/// ⌊τk⌋ = 0.
double fractional_block_estimate(double tau, std::size_t k, double upsilon_a, double l);

/// |ℙ(𝒲_{0,n}(A)) − ℙ(𝒲_{0,n}(B))| with A the q-annulus of B.
Rational annuli_gap_lhs(const FullBranchMap& map, const IntervalUnion<Rational>& b, std::size_t q,
                        std::size_t n);
/// Σ_{j=1}^{q} ℙ(𝒲_{0,n}(A) ∩ T^{−(n−j)}(B∖A)).
Rational annuli_gap_bound(const FullBranchMap& map, const IntervalUnion<Rational>& b,
                          const IntervalUnion<Rational>& a, std::size_t q, std::size_t n);

} // namespace extremal

#endif
