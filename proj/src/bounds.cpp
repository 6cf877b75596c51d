#include "extremal/bounds.hpp"

#include "extremal/errors.hpp"
#include "extremal/events.hpp"

#include <cmath>
#include <limits>

namespace extremal {

double xi(double pa, double m, std::size_t s, std::size_t t, std::size_t r, const DecayModel& gamma) {
  if (!(pa >= 0.0) || !(m >= 0.0)) throw PreconditionError("xi needs nonnegative PA and M");
  const double gt = gamma(t);
  const double sd = static_cast<double>(s);
  const double excess = s > r ? static_cast<double>(s - r) : 0.0;
  const double tail = gamma.range_sum(r, s);
  return m * sd * gt + m * excess * (pa + m * gt) * tail + sd * excess * (pa * pa + pa * m * gt);
}

double upsilon(double pa, double m, std::size_t ell, std::size_t t, std::size_t r,
               const DecayModel& gamma) {
  return static_cast<double>(t) * (pa + m * gamma(t)) + xi(pa, m, ell, t, r, gamma);
}

double evl_objective(std::size_t n, double pa, const DecayModel& gamma, std::size_t k, std::size_t t) {
  const double nd = static_cast<double>(n), kd = static_cast<double>(k), td = static_cast<double>(t);
  const double npa = nd * pa;
  return kd * td * pa + nd * gamma(t) * (1.0 + npa / kd) + npa * npa / kd;
}

double hts_objective(double pb, const DecayModel& gamma, std::size_t k, std::size_t t) {
  const double kd = static_cast<double>(k), td = static_cast<double>(t);
  return kd * td * pb + gamma(t) / pb + 1.0 / kd;
}

namespace {

// Integer minimizer of a·k + b/k over [1, kmax] (a > 0, b ≥ 0), smaller k on ties.
template <class Objective>
std::size_t best_k(double a, double b, std::size_t kmax, Objective&& f) {
  double root = b > 0.0 ? std::sqrt(b / a) : 0.0;
  std::size_t lo = root < 1.0 ? 1 : static_cast<std::size_t>(std::floor(root));
  if (lo > kmax) lo = kmax;
  std::size_t hi = std::min(kmax, lo + 1);
  // Floating rounding of the root can put the optimum one step away.
  std::size_t from = lo > 1 ? lo - 1 : 1;
  std::size_t to = std::min(kmax, hi + 1);
  std::size_t best = from;
  double best_v = f(from);
  for (std::size_t k = from + 1; k <= to; ++k) {
    double v = f(k);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  return best;
}

} // namespace

BlockingParams optimize_kt_evl(std::size_t n, double pa, const DecayModel& gamma) {
  if (n < 4) throw PreconditionError("optimize_kt_evl needs n ≥ 4");
  if (!(pa > 0.0) || !(pa < 1.0)) throw PreconditionError("PA must lie in (0,1)");
  const double nd = static_cast<double>(n);
  BlockingParams best;
  best.objective = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < n; ++t) {
    std::size_t kmax = (n - 1) / t;
    if (kmax == 0) break;
    const double npa = nd * pa;
    double a = static_cast<double>(t) * pa;
    double b = nd * gamma(t) * npa + npa * npa;
    auto f = [&](std::size_t k) { return evl_objective(n, pa, gamma, k, t); };
    std::size_t k = best_k(a, b, kmax, f);
    double v = f(k);
    if (v < best.objective) best = {k, t, v};
  }
  return best;
}

std::size_t hts_max_k(double pb, std::size_t t) {
  if (!(pb > 0.0) || t == 0) return 0;
  double guess = std::floor(1.0 / (pb * static_cast<double>(t)));
  std::size_t k = guess < 0.0 ? 0 : static_cast<std::size_t>(guess);
  const double td = static_cast<double>(t);
  while (k > 0 && static_cast<double>(k) * td * pb >= 1.0) --k;
  while (static_cast<double>(k + 1) * td * pb < 1.0) ++k;
  return k;
}

BlockingParams optimize_kt_hts(double pb, const DecayModel& gamma) {
  if (!(pb > 0.0) || !(pb < 1.0)) throw PreconditionError("PB must lie in (0,1)");
  BlockingParams best;
  best.objective = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1;; ++t) {
    std::size_t kmax = hts_max_k(pb, t);
    if (kmax == 0) break;
    double a = static_cast<double>(t) * pb;
    auto f = [&](std::size_t k) { return hts_objective(pb, gamma, k, t); };
    std::size_t k = best_k(a, 1.0, kmax, f);
    double v = f(k);
    if (v < best.objective) best = {k, t, v};
  }
  if (best.k == 0) throw PreconditionError("no feasible (k,t) pair");
  return best;
}

BlockingParams reference_schedule_evl(std::size_t n, double pa, const DecayModel& gamma) {
  const double d = gamma.delta(), nd = static_cast<double>(n);
  std::size_t t = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::pow(nd, 1.0 / (1.0 + d)))));
  std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::pow(nd, d / (2.0 + 2.0 * d)))));
  while (k * t >= n && t > 1) --t;
  while (k * t >= n && k > 1) --k;
  return {k, t, evl_objective(n, pa, gamma, k, t)};
}

ErrorBudget evl_bracket(const BracketInputs& in) {
  if (!(in.pu > 0.0)) throw PreconditionError("PU must be positive");
  double theta_n = in.pa / in.pu;
  if (theta_n < 0.0 || theta_n > 1.0) throw PreconditionError("PA/PU must lie in [0,1]");
  const double n = static_cast<double>(in.n), k = static_cast<double>(in.k), t = static_cast<double>(in.t);
  ErrorBudget b;
  b.bracket = "evl";
  b.add("gap", k * t * in.tau / n);
  b.add("mixing", n * in.gamma_mix);
  b.add("recurrence", in.dprime);
  b.add("poisson", std::exp(-theta_n * in.tau) * (std::abs(in.tau - n * in.pu) + in.tau * in.tau / k));
  b.add("annulus", static_cast<double>(in.q) * std::max(0.0, in.pu - in.pa));
  b.diagnostics.push_back({"theta_n", theta_n});
  return b;
}

ErrorBudget evl_limit_bracket(const BracketInputs& in, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw PreconditionError("theta must lie in [0,1]");
  if (!(in.pu > 0.0)) throw PreconditionError("PU must be positive");
  double theta_n = in.pa / in.pu;
  const double n = static_cast<double>(in.n), k = static_cast<double>(in.k), t = static_cast<double>(in.t);
  const double w = std::exp(-theta * in.tau);
  ErrorBudget b;
  b.bracket = "evl-limit";
  b.add("gap", k * t * in.tau / n);
  b.add("mixing", n * in.gamma_mix);
  b.add("recurrence", in.dprime);
  b.add("poisson", w * (std::abs(in.tau - n * in.pu) + in.tau * in.tau / k));
  b.add("annulus", static_cast<double>(in.q) * std::max(0.0, in.pu - in.pa));
  b.add("index", w * std::abs(theta_n - theta) * in.tau);
  b.diagnostics.push_back({"theta_n", theta_n});
  return b;
}

ErrorBudget sharp_evl_bracket(double tau, std::size_t n, double theta, double pa, std::size_t k,
                              std::size_t t, std::size_t r, const DecayModel& gamma) {
  if (k == 0) throw PreconditionError("k must be positive");
  if (n / k < t + 1) throw PreconditionError("need ℓ = ⌊n/k⌋ − t ≥ 1");
  const std::size_t ell = n / k - t;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k), td = static_cast<double>(t);
  const double tt = theta * tau;
  const double w = std::exp(-tt);
  ErrorBudget b;
  b.bracket = "sharp-evl";
  b.add("threshold", w * std::abs(tt - nd * pa));
  b.add("gap", w * kd * td * tt / nd);
  b.add("mixing", w * nd * gamma(t) * (1.0 + tt / kd));
  b.add("blocks", w * tt * tt / kd);
  b.add("recurrence", w * tt * gamma.range_sum(r, ell));
  b.diagnostics.push_back({"ell", static_cast<double>(ell)});
  return b;
}

long hts_ell(double pb, std::size_t k, std::size_t t) {
  if (!(pb > 0.0) || k == 0) throw PreconditionError("hts_ell needs PB > 0 and k ≥ 1");
  auto inv = static_cast<long>(std::floor(1.0 / pb));
  return inv / static_cast<long>(k) - static_cast<long>(t);
}

ErrorBudget sharp_hts_bracket(double tau, double pb, double pa, double theta, std::size_t k,
                              std::size_t t, std::size_t r, std::size_t ell, double m,
                              const DecayModel& gamma) {
  if (k == 0) throw PreconditionError("k must be positive");
  if (!(pb > 0.0)) throw PreconditionError("PB must be positive");
  const double l = 1.0 - static_cast<double>(ell) * pa;
  if (!(l > 0.0 && l <= 1.0)) throw PreconditionError("L = 1 − ℓ·PA must lie in (0,1]");
  const double kd = static_cast<double>(k), td = static_cast<double>(t);
  const double big_gamma = kd * td * pa + gamma(t) / pb + 1.0 / kd + gamma.range_sum(r, ell);
  const double alpha = std::abs(theta - pa / pb + td * kd * pa);
  const double ups = upsilon(pa, m, ell, t, r, gamma);
  const double shift = kd * ups / l;
  const double w = std::exp(-(theta - shift) * tau);

  ErrorBudget b;
  b.bracket = "sharp-hts";
  b.add("alpha_gamma", tau * tau * alpha * big_gamma * w);
  b.add("gamma_blocks", tau * tau * big_gamma / kd * w);
  b.add("alpha_gamma_blocks", tau * tau * tau * alpha * big_gamma / kd * w);
  b.exponent_shift = theta - shift;
  b.vacuous = shift >= theta;
  b.diagnostics = {{"Gamma", big_gamma}, {"alpha", alpha}, {"Upsilon", ups}, {"L", l},
                   {"ell", static_cast<double>(ell)}};
  return b;
}

EscapeWindow escape_rate_window(double theta, std::size_t k, double upsilon_a, double l, double pb) {
  if (!(l > 0.0)) throw PreconditionError("L must be positive");
  EscapeWindow w;
  double shift = static_cast<double>(k) * upsilon_a / l;
  w.nominal = theta * pb;
  w.lower = (theta - shift) * pb;
  w.degenerate = shift >= theta;
  return w;
}

ExpApprox exp_approx_error(double x, double n) {
  if (!(n >= 1.0)) throw PreconditionError("n must be at least 1");
  if (!(std::abs(x) < n)) throw PreconditionError("need |x| < n");
  const long double xl = x, nl = n;
  long double approx = std::exp(xl) * (1.0L - xl * xl / (2.0L * nl) +
                                       xl * xl * xl * (8.0L + 3.0L * xl) / (24.0L * nl * nl));
  long double exact = std::exp(nl * std::log1p(xl / nl));
  return {static_cast<double>(approx), static_cast<double>(std::abs(exact - approx))};
}

double block_estimate(std::size_t k, double upsilon_a, double l) {
  if (k == 0) throw PreconditionError("k must be positive");
  const double kd = static_cast<double>(k);
  return kd * upsilon_a * std::pow(l + upsilon_a, kd - 1.0) * (1.0 + l + upsilon_a);
}

double block_estimate_small(std::size_t k, double upsilon_a, double l) {
  const double kd = static_cast<double>(k);
  if (k == 0 || !(kd * upsilon_a < l / 2.0)) throw PreconditionError("needs kΥ < L/2");
  return 5.0 * kd * upsilon_a * std::pow(l, kd - 1.0);
}

double fractional_block_estimate(double tau, std::size_t k, double upsilon_a, double l) {
  if (!(tau > 0.0) || k == 0) throw PreconditionError("needs τ > 0 and k ≥ 1");
  const double tk = tau * static_cast<double>(k);
  const double fl = std::floor(tk);
  if (fl == 0.0) return upsilon_a;
  return (3.0 + upsilon_a) * std::ceil(tk) * upsilon_a * std::pow(l + upsilon_a, fl - 1.0);
}

Rational annuli_gap_lhs(const FullBranchMap& map, const IntervalUnion<Rational>& b, std::size_t q,
                        std::size_t n) {
  auto a = annulus_set(map, b, q);
  return abs(Rational(exact_evl_prob(map, b, n) - exact_evl_prob(map, a, n)));
}

Rational annuli_gap_bound(const FullBranchMap& map, const IntervalUnion<Rational>& b,
                          const IntervalUnion<Rational>& a, std::size_t q, std::size_t n) {
  if (q >= n && q > 0) throw PreconditionError("need q < n");
  if (q == 0) return Rational(0);
  if (!(annulus_set(map, b, q) == a)) throw PreconditionError("A must be the q-annulus of B");
  auto rim = difference(b, a);
  if (rim.empty()) return Rational(0);
  auto w = survivor_set(map, a, 0, n);
  Rational total = 0;
  for (std::size_t j = 1; j <= q; ++j)
    total += intersect(w, preimage_power(map, rim, n - j)).measure();
  return total;
}

} // namespace extremal
