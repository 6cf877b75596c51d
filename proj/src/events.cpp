#include "extremal/events.hpp"

#include "extremal/errors.hpp"

#include <cmath>
#include <set>

namespace extremal {

ThresholdSchedule threshold_for(const Observable& obs, std::size_t n, const Rational& tau) {
  if (n == 0) throw PreconditionError("n must be positive");
  if (tau <= 0) throw PreconditionError("tau must be positive (tau = 0 puts the threshold at sup φ)");
  Rational nn(static_cast<long>(n));
  if (tau / nn >= 1) throw PreconditionError("tau/n must be below 1");
  ThresholdSchedule s;
  s.tau = tau;
  s.n = n;
  s.p = tau / nn;
  s.radius = s.p / 2;
  s.u = obs.level_for_radius(s.radius.get_d());
  return s;
}

IntervalUnion<Rational> exceedance_ball(const Observable& obs, const Rational& radius) {
  return ball(obs.center(), radius, Topology::circle);
}

IntervalUnion<Rational> exceedance_set(const Observable& obs, double u) {
  double r = obs.radius_for(u);
  if (!(r < 0.5)) throw PreconditionError("threshold too low: exceedance ball would cover the circle");
  return exceedance_ball(obs, from_double(r));
}

IntervalUnion<Rational> annulus_set(const FullBranchMap& map, const IntervalUnion<Rational>& u,
                                    std::size_t q) {
  IntervalUnion<Rational> a = u;
  for (std::size_t i = 1; i <= q && !a.empty(); ++i)
    a = difference(a, local_preimage(map, u, i, a));
  return a;
}

IntervalUnion<Rational> annulus_set(const FullBranchMap& map, const Observable& obs, double u,
                                    std::size_t q) {
  return annulus_set(map, exceedance_set(obs, u), q);
}

IntervalUnion<Rational> survivor_set(const FullBranchMap& map, const IntervalUnion<Rational>& b,
                                     std::size_t s, std::size_t ell, std::size_t budget) {
  auto full = IntervalUnion<Rational>::full(b.topology());
  if (ell == 0) return full;
  const auto avoid = complement(b);
  IntervalUnion<Rational> w = avoid;
  for (std::size_t m = 1; m < ell; ++m) {
    w = intersect(avoid, preimage(map, w));
    if (w.size() > budget) throw BudgetExceeded("survivor set exceeded its component budget");
  }
  for (std::size_t m = 0; m < s; ++m) {
    w = preimage(map, w);
    if (w.size() > budget) throw BudgetExceeded("survivor set exceeded its component budget");
  }
  return w;
}

Rational theta_n(const FullBranchMap& map, const IntervalUnion<Rational>& u, std::size_t q) {
  Rational mu = u.measure();
  if (mu <= 0) throw PreconditionError("theta_n needs ℙ(U) > 0");
  return annulus_set(map, u, q).measure() / mu;
}

Rational theta_n(const FullBranchMap& map, const Observable& obs, double u, std::size_t q) {
  return theta_n(map, exceedance_set(obs, u), q);
}

ThetaLimit theta_limit(const FullBranchMap& map, const Observable& obs, std::size_t cap,
                       std::size_t certification_horizon) {
  map.require_affine("theta_limit");
  const Rational& zeta = obs.center();
  std::set<Rational> seen{zeta};
  Rational x = zeta;
  Rational multiplier = 1;
  for (std::size_t j = 1; j <= std::max(cap, certification_horizon); ++j) {
    const Branch& b = map.branch(map.containing_branch(x));
    multiplier *= abs(*b.slope);
    x = map.apply(x);
    if (x == zeta) {
      if (j > cap) throw PreconditionError("period of zeta exceeds the cap; supply q explicitly");
      ThetaLimit t;
      t.q = j;
      t.periodic = true;
      t.multiplier = multiplier;
      t.theta = 1 - 1 / multiplier;
      return t;
    }
    if (!seen.insert(x).second) return ThetaLimit{};
  }
  throw PreconditionError("period detection inconclusive; supply q explicitly");
}

std::optional<std::size_t> first_return_R(const FullBranchMap& map, const IntervalUnion<Rational>& a,
                                          std::size_t horizon) {
  return first_return_time(map, a, horizon);
}

Rational dprime_sum(const FullBranchMap& map, const IntervalUnion<Rational>& a, std::size_t n,
                    std::size_t q, std::size_t k, DprimeRange range) {
  if (k == 0) throw PreconditionError("k must be positive");
  std::size_t block = n / k;
  std::size_t first = range == DprimeRange::beyond_q ? q + 1 : 1;
  std::size_t last = range == DprimeRange::beyond_q ? (block >= 1 ? block - 1 : 0) : block;
  if (block == 0 || first > last || a.empty()) return Rational(0);
  std::vector<Rational> series = overlap_series(map, a, a, last);
  Rational total = 0;
  for (std::size_t j = first; j <= last; ++j) total += series[j];
  return Rational(static_cast<long>(n)) * total;
}

Rational dprime_sum(const FullBranchMap& map, const Observable& obs, std::size_t n, std::size_t q,
                    std::size_t k, const Rational& tau, DprimeRange range) {
  ThresholdSchedule s = threshold_for(obs, n, tau);
  auto a = annulus_set(map, exceedance_ball(obs, s.radius), q);
  return dprime_sum(map, a, n, q, k, range);
}

Rational exact_evl_prob(const FullBranchMap& map, const IntervalUnion<Rational>& u, std::size_t n,
                        std::size_t budget) {
  return survivor_set(map, u, 0, n, budget).measure();
}

Rational exact_evl_prob(const FullBranchMap& map, const Observable& obs, std::size_t n, double u,
                        std::size_t budget) {
  return exact_evl_prob(map, exceedance_set(obs, u), n, budget);
}

Rational exact_hts_prob(const FullBranchMap& map, const IntervalUnion<Rational>& b, std::size_t t,
                        std::size_t budget) {
  if (t == 0) return Rational(1);
  return preimage(map, survivor_set(map, b, 0, t, budget)).measure();
}

} // namespace extremal
