#include "support.hpp"

#include "extremal/bounds.hpp"
#include "extremal/decay.hpp"
#include "extremal/error_budget.hpp"
#include "extremal/errors.hpp"
#include "extremal/events.hpp"
#include "extremal/observable.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace extremal;
using testing::q;

namespace {

const DecayModel half = DecayModel::exponential(1.0, 0.5);

// Plain re-evaluation of Ξ term by term.
double xi_oracle(double pa, double m, long s, long t, long r, const DecayModel& g) {
  double sum = 0;
  for (long j = r; j < s; ++j) sum += g(static_cast<std::size_t>(j));
  double excess = s > r ? static_cast<double>(s - r) : 0.0;
  double gt = g(static_cast<std::size_t>(t));
  double first = m * s * gt;
  double second = m * excess * (pa + m * gt) * sum;
  double third = s * excess * (pa * pa + pa * m * gt);
  return first + second + third;
}

BlockingParams scan_evl(std::size_t n, double pa, const DecayModel& g) {
  BlockingParams best{0, 0, std::numeric_limits<double>::infinity()};
  auto f = [&](double k, double t) {
    double npa = n * pa;
    return k * t * pa + n * g(static_cast<std::size_t>(t)) * (1 + npa / k) + npa * npa / k;
  };
  for (std::size_t t = 1; t < n; ++t)
    for (std::size_t k = 1; k * t < n; ++k) {
      double v = f(static_cast<double>(k), static_cast<double>(t));
      if (v < best.objective) best = {k, t, v};
    }
  return best;
}

BlockingParams scan_hts(double pb, const DecayModel& g) {
  BlockingParams best{0, 0, std::numeric_limits<double>::infinity()};
  for (std::size_t t = 1; t * pb < 1; ++t)
    for (std::size_t k = 1; k * t * pb < 1; ++k) {
      double v = k * t * pb + g(t) / pb + 1.0 / k;
      if (v < best.objective) best = {k, t, v};
    }
  return best;
}

double close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("decay models") {
  auto e = DecayModel::exponential(4.0, 0.5);
  CHECK(e(0) == 4.0);
  CHECK(e(3) == 0.5);
  double loop = 0;
  for (std::size_t j = 5; j < 2000; ++j) loop += e(j);
  CHECK(e.tail_sum(5) == doctest::Approx(loop).epsilon(1e-12));
  CHECK(e.tail_sum(5) == doctest::Approx(4.0 * std::pow(0.5, 5) / 0.5));
  CHECK(e.range_sum(3, 3) == 0.0);
  auto tab = DecayModel::tabulated({1.0, 0.5, 0.25});
  CHECK(tab(1) == 0.5);
  CHECK(tab(7) == 0.0);
  CHECK(tab.range_sum(0, 10) == 1.75);
  CHECK_THROWS_AS(DecayModel::tabulated({0.5, 1.0}), PreconditionError);
  CHECK_THROWS_AS(DecayModel::exponential(1.0, 1.0), PreconditionError);
  CHECK(DecayModel::for_map(FullBranchMap::tripling()).lambda() == doctest::Approx(1.0 / 3));
  CHECK(DecayModel::zero()(0) == 0.0);
}

TEST_CASE("xi") {
  auto zero = DecayModel::zero();
  CHECK(xi(0.01, 4, 50, 3, 5, zero) == doctest::Approx(50.0 * 45 * 1e-4));
  double gt = half(3), sum = half.range_sum(5, 50);
  CHECK(xi(0.0, 4, 50, 3, 5, half) == doctest::Approx(4 * 50 * gt + 16 * 45 * gt * sum));
  // s < R clamps the (s−R) factors
  CHECK(xi(0.01, 4, 3, 3, 5, half) == doctest::Approx(4 * 3 * gt));
  double v = xi(1e-3, 4, 100, 20, 5, half);
  CHECK(close(v, xi_oracle(1e-3, 4, 100, 20, 5, half)));
  CHECK(v == doctest::Approx(0.03375830841064453).epsilon(1e-13));
}

TEST_CASE("upsilon") {
  auto zero = DecayModel::zero();
  CHECK(upsilon(0.01, 4, 50, 0, 5, zero) == xi(0.01, 4, 50, 0, 5, zero));
  testing::Gen g(41);
  for (int i = 0; i < 100; ++i) {
    double pa = testing::uniform(g, 1, 1000) * 1e-5;
    std::size_t ell = testing::uniform(g, 1, 200), t = testing::uniform(g, 0, 30), r = testing::uniform(g, 1, 40);
    double diff = upsilon(pa, 4, ell, t, r, half) - xi(pa, 4, ell, t, r, half);
    CHECK(diff == doctest::Approx(t * (pa + 4 * half(t))).epsilon(1e-10));
  }
  CHECK(upsilon(1e-3, 4, 100, 20, 5, half) == doctest::Approx(0.05383460235595704).epsilon(1e-13));
}

TEST_CASE("EVL optimizer matches the exhaustive scan") {
  auto zero = DecayModel::zero();
  for (std::size_t n : {16u, 100u, 1000u, 10000u}) {
    for (double pa : {1e-4, 1e-3, 0.02}) {
      for (const DecayModel* g : std::initializer_list<const DecayModel*>{&zero, &half}) {
        auto fast = optimize_kt_evl(n, pa, *g);
        auto slow = scan_evl(n, pa, *g);
        CHECK(fast.objective == doctest::Approx(slow.objective).epsilon(1e-12));
        CHECK(fast.k == slow.k);
        CHECK(fast.t == slow.t);
        CHECK(fast.k * fast.t < n);
      }
    }
  }
  auto z = optimize_kt_evl(10000, 1e-3, zero);
  CHECK(z.t == 1);
  CHECK(std::abs(static_cast<double>(z.k) - 10000 * 1e-3 / std::sqrt(1e-3)) <= 1.0);
  CHECK_THROWS_AS(optimize_kt_evl(3, 0.1, half), PreconditionError);
  CHECK_THROWS_AS(optimize_kt_evl(100, 0.0, half), PreconditionError);
}

TEST_CASE("EVL optimizer beats the reference schedule") {
  for (std::size_t n : {100u, 1000u, 100000u}) {
    double pa = 0.75 / n;
    auto best = optimize_kt_evl(n, pa, half);
    auto ref = reference_schedule_evl(n, pa, half);
    CHECK(ref.k * ref.t < n);
    CHECK(best.objective <= ref.objective);
  }
}

TEST_CASE("HTS optimizer matches the exhaustive scan") {
  auto zero = DecayModel::zero();
  for (double pb : {0.3, 0.05, 0.01, 0.002}) {
    for (const DecayModel* g : std::initializer_list<const DecayModel*>{&zero, &half}) {
      auto fast = optimize_kt_hts(pb, *g);
      auto slow = scan_hts(pb, *g);
      CHECK(fast.objective == doctest::Approx(slow.objective).epsilon(1e-12));
      CHECK(fast.k == slow.k);
      CHECK(fast.t == slow.t);
      CHECK(fast.k * fast.t * pb < 1);
    }
  }
  auto z = optimize_kt_hts(0.01, zero);
  CHECK(z.t == 1);
  CHECK(std::abs(static_cast<double>(z.k) - 10.0) <= 1.0);
  CHECK_THROWS_AS(optimize_kt_hts(1.0, half), PreconditionError);
  double prev = std::numeric_limits<double>::infinity();
  for (double pb = 0.2; pb > 1e-4; pb /= 1.7) {
    double v = optimize_kt_hts(pb, half).objective;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(hts_max_k(0.1, 3) == 3);
  CHECK(hts_max_k(0.25, 1) == 3);
}

TEST_CASE("evl bracket") {
  BracketInputs in;
  in.tau = 1.5;
  in.n = 1000;
  in.q = 0;
  in.k = 10;
  in.t = 4;
  in.pu = 1.5 / 1000;
  in.pa = in.pu;
  auto b = evl_bracket(in);
  CHECK(b.total == doctest::Approx(10 * 4 * 1.5 / 1000 + std::exp(-1.5) * 1.5 * 1.5 / 10));
  CHECK(b.term("annulus") == 0.0);
  CHECK(b.term("mixing") == 0.0);
  in.pa = 2 * in.pu;
  CHECK_THROWS_AS(evl_bracket(in), PreconditionError);
}

TEST_CASE("evl limit bracket") {
  BracketInputs in;
  in.tau = 1.0;
  in.n = 4096;
  in.q = 2;
  in.k = 8;
  in.t = 12;
  in.pu = 1.0 / 4096;
  in.pa = 0.75 / 4096;
  in.gamma_mix = half(12);
  in.dprime = 0.01;
  auto finite = evl_bracket(in);
  auto lim = evl_limit_bracket(in, 0.75);
  CHECK(lim.term("index") == 0.0);
  CHECK(lim.total == doctest::Approx(finite.total));
  in.tau = 0.0;
  in.pu = 1e-3;
  in.pa = 7.5e-4;
  auto z = evl_limit_bracket(in, 0.75);
  CHECK(z.total == doctest::Approx(4096 * half(12) + 0.01 + 4096 * 1e-3 + 2 * (1e-3 - 7.5e-4)));
}

TEST_CASE("evl bracket regression at n=4096") {
  auto d = FullBranchMap::doubling();
  auto obs = Observable::neg_log(q(1, 3));
  const std::size_t n = 4096;
  auto u = exceedance_ball(obs, threshold_for(obs, n, Rational(1)).radius);
  auto a = annulus_set(d, u, 2);
  BracketInputs in;
  in.tau = 1.0;
  in.n = n;
  in.q = 2;
  in.pu = u.measure().get_d();
  in.pa = a.measure().get_d();
  auto kt = optimize_kt_evl(n, in.pa, half);
  in.k = kt.k;
  in.t = kt.t;
  in.gamma_mix = half(kt.t);
  in.dprime = dprime_sum(d, a, n, 2, kt.k).get_d();
  auto b = evl_bracket(in);
  // independent re-evaluation
  double theta_n = in.pa / in.pu;
  double expected = double(in.k) * in.t * in.tau / n + n * in.gamma_mix + in.dprime +
                    std::exp(-theta_n * in.tau) * (std::abs(in.tau - n * in.pu) + in.tau * in.tau / in.k) +
                    in.q * (in.pu - in.pa);
  CHECK(b.total == doctest::Approx(expected).epsilon(1e-14));
  CHECK(b.term("poisson") == doctest::Approx(std::exp(-0.75) / in.k));
  auto lim = evl_limit_bracket(in, 0.75);
  CHECK(lim.total == doctest::Approx(b.total).epsilon(1e-14));
  CHECK(in.k == 12);
  CHECK(in.t == 20);
  CHECK(b.total == doctest::Approx(0.14707567138727207).epsilon(1e-12));
}

TEST_CASE("sharp evl bracket") {
  auto zero = DecayModel::zero();
  const double theta = 0.75, tau = 1.0;
  const std::size_t n = 1000, k = 10, t = 5;
  double pa = theta * tau / n;
  auto b = sharp_evl_bracket(tau, n, theta, pa, k, t, 3, half);
  CHECK(b.term("threshold") == doctest::Approx(0.0).epsilon(1e-15));
  auto z = sharp_evl_bracket(tau, n, theta, pa, k, t, 3, zero);
  double w = std::exp(-theta * tau);
  CHECK(z.total == doctest::Approx(w * (k * t * theta * tau / n + theta * theta * tau * tau / k)));
  CHECK_THROWS_AS(sharp_evl_bracket(tau, 100, theta, pa, 10, 10, 3, half), PreconditionError);
  // smaller γ never increases the bracket
  auto small = DecayModel::exponential(0.5, 0.5);
  CHECK(sharp_evl_bracket(tau, n, theta, pa, k, t, 3, small).total <= b.total);
}

TEST_CASE("sharp evl bracket regression at n=2^14") {
  auto d = FullBranchMap::doubling();
  auto obs = Observable::neg_log(q(1, 3));
  const std::size_t n = 1u << 14;
  auto u = exceedance_ball(obs, threshold_for(obs, n, Rational(1)).radius);
  auto a = annulus_set(d, u, 2);
  double pa = a.measure().get_d();
  auto r = first_return_R(d, a, n);
  REQUIRE(r.has_value());
  auto kt = optimize_kt_evl(n, pa, half);
  auto b = sharp_evl_bracket(1.0, n, 0.75, pa, kt.k, kt.t, *r, half);
  double w = std::exp(-0.75);
  std::size_t ell = n / kt.k - kt.t;
  double rec = 0;
  for (std::size_t j = *r; j < ell; ++j) rec += half(j);
  double expected = w * (std::abs(0.75 - n * pa) + double(kt.k) * kt.t * 0.75 / n +
                         n * half(kt.t) * (1 + 0.75 / kt.k) + 0.5625 / kt.k + 0.75 * rec);
  CHECK(b.total == doctest::Approx(expected).epsilon(1e-14));
  CHECK(*r == 15);
  CHECK(kt.k == 23);
  CHECK(kt.t == 23);
  CHECK(b.total == doctest::Approx(0.023965427401545222).epsilon(1e-12));
}

TEST_CASE("sharp hts bracket") {
  const double pb = 0.02, pa = 0.015, theta = 0.75;
  auto kt = optimize_kt_hts(pb, half);
  long ell = hts_ell(pb, kt.k, kt.t);
  REQUIRE(ell >= 0);
  auto b = sharp_hts_bracket(1.0, pb, pa, theta, kt.k, kt.t, 6, static_cast<std::size_t>(ell), 4.0, half);
  double big_gamma = double(kt.k) * kt.t * pa + half(kt.t) / pb + 1.0 / kt.k + half.range_sum(6, ell);
  double alpha = std::abs(theta - pa / pb + double(kt.t) * kt.k * pa);
  double ups = upsilon(pa, 4.0, ell, kt.t, 6, half);
  double l = 1 - ell * pa;
  double w = std::exp(-(theta - kt.k * ups / l));
  CHECK(*b.diagnostic("Gamma") == doctest::Approx(big_gamma));
  CHECK(*b.diagnostic("alpha") == doctest::Approx(alpha));
  CHECK(b.total == doctest::Approx((alpha * big_gamma + big_gamma / kt.k + alpha * big_gamma / kt.k) * w));
  CHECK(*b.exponent_shift == doctest::Approx(theta - kt.k * ups / l));
  CHECK(b.vacuous == (kt.k * ups / l >= theta));
  // α vanishes when PA/PB = θ and tk·PA = 0
  auto z = sharp_hts_bracket(1.0, 0.02, 0.0, 0.0, 3, 1, 5, 10, 4.0, DecayModel::zero());
  CHECK(*z.diagnostic("alpha") == 0.0);
  CHECK_THROWS_AS(sharp_hts_bracket(1.0, 0.02, 0.2, 0.75, 3, 1, 5, 10, 4.0, half), PreconditionError);
  // γ pointwise smaller never increases it
  auto small = DecayModel::exponential(0.5, 0.5);
  auto s = sharp_hts_bracket(1.0, pb, pa, theta, kt.k, kt.t, 6, ell, 4.0, small);
  CHECK(s.total <= b.total);
}

TEST_CASE("sharp hts Γ shrinks along ε") {
  auto d = FullBranchMap::doubling();
  double prev_gamma = INFINITY;
  for (long den : {100L, 1000L, 10000L, 100000L}) {
    auto b = ball(q(1, 3), q(1, den));
    auto a = annulus_set(d, b, 2);
    double pb = b.measure().get_d(), pa = a.measure().get_d();
    auto kt = optimize_kt_hts(pb, half);
    long ell = hts_ell(pb, kt.k, kt.t);
    auto r = first_return_R(d, a, 4096);
    auto br = sharp_hts_bracket(1.0, pb, pa, 0.75, kt.k, kt.t, *r, ell > 0 ? ell : 0, 4.0, half);
    CHECK(*br.diagnostic("Gamma") < prev_gamma);
    prev_gamma = *br.diagnostic("Gamma");
  }
}

TEST_CASE("escape window") {
  auto w = escape_rate_window(0.5, 3, 0.0, 0.9, 0.04);
  CHECK(w.lower == w.nominal);
  CHECK(w.nominal == doctest::Approx(0.02));
  auto v = escape_rate_window(0.5, 3, 0.01, 0.9, 0.04);
  CHECK(v.lower < v.nominal);
  CHECK(!v.degenerate);
  auto deg = escape_rate_window(0.5, 3, 1.0, 0.9, 0.04);
  CHECK(deg.degenerate);
  CHECK(deg.lower <= deg.nominal);
}

TEST_CASE("exp approximation") {
  auto z = exp_approx_error(0.0, 10);
  CHECK(z.approx == 1.0);
  CHECK(z.defect == 0.0);
  CHECK(exp_approx_error(-1.0, 100).defect < exp_approx_error(-1.0, 10).defect);
  // defect = O(n^-3): the scaled defect stays bounded by its value at n = 10
  for (double x : {-2.0, -1.0, 1.0, 2.0}) {
    double first = exp_approx_error(x, 10.0).defect * 1e3;
    for (double n : {100.0, 1000.0, 10000.0})
      CHECK(exp_approx_error(x, n).defect * n * n * n <= 2.0 * first);
  }
  CHECK_THROWS_AS(exp_approx_error(5.0, 3.0), PreconditionError);
}

TEST_CASE("block estimates") {
  CHECK(block_estimate(3, 0.01, 0.9) == doctest::Approx(3 * 0.01 * std::pow(0.91, 2) * 1.91));
  CHECK(block_estimate_small(3, 0.01, 0.9) == doctest::Approx(5 * 3 * 0.01 * 0.81));
  CHECK_THROWS_AS(block_estimate_small(100, 0.01, 0.9), PreconditionError);
  CHECK(fractional_block_estimate(0.05, 10, 0.02, 0.9) == 0.02);
  CHECK(fractional_block_estimate(1.5, 3, 0.02, 0.9) == doctest::Approx(3.02 * 5 * 0.02 * std::pow(0.92, 3)));
}

TEST_CASE("annuli gap") {
  auto d = FullBranchMap::doubling();
  auto b = ball(q(1, 3), q(1, 50));
  CHECK(annuli_gap_bound(d, b, b, 0, 10) == 0);
  // non-recurrent ball: A = B
  auto c = ball(q(1, 5), q(1, 1000));
  CHECK(annuli_gap_bound(d, c, annulus_set(d, c, 2), 2, 10) == 0);
  auto a = annulus_set(d, b, 2);
  Rational lhs = annuli_gap_lhs(d, b, 2, 10);
  Rational rhs = annuli_gap_bound(d, b, a, 2, 10);
  CHECK(rhs > 0);
  CHECK(lhs <= rhs);
  CHECK_THROWS_AS(annuli_gap_bound(d, b, b, 2, 10), PreconditionError);
}

TEST_CASE("property: annuli domination") {
  testing::Gen g(42);
  for (int i = 0; i < 60; ++i) {
    auto m = testing::random_map(g);
    Rational zeta = q(testing::uniform(g, 0, 47), 48);
    auto b = ball(zeta, q(testing::uniform(g, 1, 16), 256));
    std::size_t qq = testing::uniform(g, 0, 3);
    std::size_t n = testing::uniform(g, qq + 1, 6);
    auto a = annulus_set(m, b, qq);
    CHECK(annuli_gap_lhs(m, b, qq, n) <= annuli_gap_bound(m, b, a, qq, n));
  }
}

TEST_CASE("error budget bookkeeping") {
  ErrorBudget b;
  b.bracket = "demo";
  b.add("x", 0.25);
  b.add("y", 0.5);
  CHECK(b.total == 0.75);
  CHECK_THROWS_AS(b.add("bad", -1.0), NumericalError);
  CHECK_THROWS_AS(b.add("nan", std::nan("")), NumericalError);
  auto j = to_json(b);
  CHECK(j["terms"]["y"] == 0.5);
  CHECK(j["constant_policy"] == "constant C excluded");
  std::ostringstream os;
  write_budget_csv_header(os);
  write_budget_csv(os, "10", b);
  CHECK(os.str() == "scale,bracket,term,value\n10,demo,x,0.25\n10,demo,y,0.5\n10,demo,total,0.75\n");
}

TEST_CASE("property: brackets are nonnegative and sum their terms") {
  testing::Gen g(43);
  for (int i = 0; i < 200; ++i) {
    BracketInputs in;
    in.tau = testing::uniform(g, 0, 300) / 100.0;
    in.n = testing::uniform(g, 10, 100000);
    in.q = testing::uniform(g, 0, 3);
    in.k = testing::uniform(g, 1, 50);
    in.t = testing::uniform(g, 1, 50);
    in.pu = testing::uniform(g, 1, 1000) * 1e-5;
    in.pa = in.pu * testing::uniform(g, 0, 100) / 100.0;
    in.gamma_mix = half(in.t);
    in.dprime = testing::uniform(g, 0, 100) * 1e-3;
    for (const auto& b : {evl_bracket(in), evl_limit_bracket(in, 0.6)}) {
      double s = 0;
      for (const auto& t : b.terms) {
        CHECK(t.value >= 0);
        s += t.value;
      }
      CHECK(s == doctest::Approx(b.total));
    }
  }
}

}
