#include "support.hpp"

#include "extremal/errors.hpp"
#include "extremal/full_branch_map.hpp"
#include "extremal/serialization.hpp"
#include "extremal/symbolic.hpp"
#include "extremal/ulam.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace extremal;
using testing::q;

namespace {

ExactSet iv(const Rational& a, const Rational& b) { return ExactSet::interval(a, b); }

FullBranchMap three_branch() { return FullBranchMap::from_widths({q(1, 2), q(1, 4), q(1, 4)}); }

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("apply") {
  auto d = FullBranchMap::doubling();
  CHECK(d.apply(q(3, 10)) == q(3, 5));
  CHECK(d.apply(q(7, 10)) == q(2, 5));
  CHECK(d.apply(0.3) == doctest::Approx(0.6));
  auto m = three_branch();
  CHECK(m.apply(q(3, 5)) == q(2, 5));
  // coding round trip: the inverse of the covering branch gives x back
  CHECK(m.inverse(m.branch_of(q(3, 5)), m.apply(q(3, 5))) == q(3, 5));
  CHECK(m.derivative(q(3, 5)) == 4);
}

TEST_CASE("branch boundaries") {
  auto d = FullBranchMap::doubling();
  CHECK_THROWS_AS(d.branch_of(q(1, 2)), BoundaryPoint);
  CHECK(d.containing_branch(q(1, 2)) == 1);
  CHECK(d.branch_of(Rational(0)) == 0);
  CHECK(d.apply(q(1, 2)) == 0);
  CHECK_THROWS_AS(d.branch_of(Rational(1)), PreconditionError);
}

TEST_CASE("map validation") {
  CHECK_THROWS_AS(FullBranchMap::from_widths({q(1, 2), q(1, 3)}), PreconditionError);
  CHECK_THROWS_AS(FullBranchMap::from_widths({Rational(1)}), PreconditionError);
  // slope must match the domain width
  CHECK_THROWS_AS(FullBranchMap::affine({{0, q(1, 2), 3, 0}, {q(1, 2), 1, 2, -1}}), PreconditionError);
  auto tent = FullBranchMap::affine({{0, q(1, 2), 2, 0}, {q(1, 2), 1, -2, 2}});
  CHECK(tent.apply(q(3, 4)) == q(1, 2));
  CHECK(!tent.branch(1).increasing);
}

TEST_CASE("builtins") {
  CHECK(FullBranchMap::builtin("doubling").is_doubling());
  CHECK(FullBranchMap::builtin("tripling").branch_count() == 3);
  CHECK(FullBranchMap::builtin("widths:1/2,1/4,1/4").branch(2).lo == q(3, 4));
  CHECK_THROWS_AS(FullBranchMap::builtin("logistic"), PreconditionError);
}

TEST_CASE("preimage") {
  auto d = FullBranchMap::doubling();
  auto p = preimage(d, iv(q(1, 5), q(3, 10)));
  CHECK(p == unite(iv(q(1, 10), q(3, 20)), iv(q(3, 5), q(13, 20))));
  CHECK(p.measure() == q(1, 10));
  // forward mapping of sample points lands in S exactly when they are in p
  for (int k = 0; k < 1000; ++k) {
    Rational x = q(2 * k + 1, 2000);
    CHECK(p.contains(x) == iv(q(1, 5), q(3, 10)).contains(d.apply(x)));
  }
  CHECK(preimage(d, ExactSet()).empty());
  CHECK(preimage(d, ExactSet::full()).is_full());
}

TEST_CASE("image") {
  auto d = FullBranchMap::doubling();
  CHECK(image(d, iv(q(1, 10), q(3, 20))) == iv(q(1, 5), q(3, 10)));
  CHECK(image(d, iv(q(2, 5), q(3, 5))) == unite(iv(q(4, 5), 1), iv(0, q(1, 5))));
  testing::Gen g(7);
  for (int i = 0; i < 100; ++i) {
    auto s = testing::random_set(g);
    CHECK(is_subset(s, image(d, preimage(d, s))));
  }
}

TEST_CASE("property: Lebesgue invariance") {
  testing::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    auto m = testing::random_map(g);
    auto s = testing::random_set(g);
    CHECK(preimage(m, s).measure() == s.measure());
  }
}

TEST_CASE("preimage power and local preimage agree") {
  testing::Gen g(12);
  for (int i = 0; i < 200; ++i) {
    auto m = testing::random_map(g);
    auto target = testing::random_set(g, 32, 2);
    auto within = testing::random_set(g, 32, 2);
    std::size_t j = static_cast<std::size_t>(testing::uniform(g, 0, 4));
    CHECK(local_preimage(m, target, j, within) == intersect(within, preimage_power(m, target, j)));
  }
}

TEST_CASE("overlap series matches direct computation") {
  testing::Gen g(13);
  for (int i = 0; i < 100; ++i) {
    auto m = testing::random_map(g);
    auto a = testing::random_set(g, 32, 2);
    auto b = testing::random_set(g, 32, 2);
    auto series = overlap_series(m, a, b, 5);
    REQUIRE(series.size() == 6);
    for (std::size_t j = 0; j <= 5; ++j)
      CHECK(series[j] == intersect(a, preimage_power(m, b, j)).measure());
  }
}

TEST_CASE("first return time") {
  auto d = FullBranchMap::doubling();
  // ball around the fixed point 0 returns at once
  CHECK(first_return_time(d, ball(Rational(0), q(1, 100)), 50) == 1u);
  // ball around 1/3 returns after its period
  CHECK(first_return_time(d, ball(q(1, 3), q(1, 100)), 50) == 2u);
  // brute force: smallest j with |T^j(A) ∩ A| > 0
  testing::Gen g(14);
  for (int i = 0; i < 50; ++i) {
    auto a = testing::random_set(g, 64, 2);
    if (a.empty()) continue;
    std::optional<std::size_t> brute;
    auto img = a;
    for (std::size_t j = 1; j <= 8 && !brute; ++j) {
      img = image(d, img);
      if (intersect(img, a).measure() > 0) brute = j;
    }
    CHECK(first_return_time(d, a, 8) == brute);
  }
}

TEST_CASE("symbolic sampling") {
  auto d = FullBranchMap::doubling();
  Rng rng(5);
  auto orbit = symbolic_sample(d, rng, 2000);
  std::size_t ones = 0;
  for (std::size_t k = 0; k < orbit.horizon(); ++k) ones += orbit.digits()[k];
  CHECK(std::abs(static_cast<double>(ones) / orbit.horizon() - 0.5) < 0.05);
  for (std::size_t k = 0; k + 1 < orbit.horizon(); ++k) {
    double x = orbit.point(k);
    CHECK(d.branch_of(x) == orbit.digits()[k]);
    CHECK(std::abs(d.apply(x) - orbit.point(k + 1)) < 1e-12);
  }
}

TEST_CASE("symbolic sampling: coding consistency on random maps") {
  testing::Gen g(15);
  for (int i = 0; i < 20; ++i) {
    auto m = testing::random_map(g);
    Rng rng(i);
    auto orbit = symbolic_sample(m, rng, 200);
    for (std::size_t k = 0; k < orbit.horizon(); ++k) CHECK(m.branch_of(orbit.point(k)) == orbit.digits()[k]);
  }
}

TEST_CASE("symbolic sampling: occupation frequency") {
  auto d = FullBranchMap::doubling();
  Rng rng(6);
  DigitSampler sampler(d);
  // Sliding reconstruction: the point at time k is read from 64 digits.
  std::vector<std::size_t> window(64);
  for (auto& w : window) w = sampler(rng);
  std::size_t hits = 0;
  const std::size_t steps = 1000000;
  for (std::size_t k = 0; k < steps; ++k) {
    double y = 0.5;
    for (std::size_t m = 64; m-- > 0;) y = d.inverse(window[(k + m) % 64], y);
    if (y >= 0.2 && y < 0.3) ++hits;
    window[k % 64] = sampler(rng);
  }
  CHECK(std::abs(static_cast<double>(hits) / steps - 0.1) < 0.001);
}

TEST_CASE("digit sampler follows branch widths") {
  auto m = three_branch();
  DigitSampler s(m);
  Rng rng(9);
  std::vector<double> counts(3, 0.0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) counts[s(rng)] += 1;
  CHECK(counts[0] / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(counts[1] / n == doctest::Approx(0.25).epsilon(0.03));
  CHECK(counts[2] / n == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("ulam matrix") {
  auto d = FullBranchMap::doubling();
  auto p2 = ulam_matrix(d, 2);
  CHECK(p2.at(0, 0) == 0.5);
  CHECK(p2.at(0, 1) == 0.5);
  CHECK(p2.at(1, 0) == 0.5);
  CHECK(p2.at(1, 1) == 0.5);
  auto p1 = ulam_matrix(d, 1);
  CHECK(p1.at(0, 0) == 1.0);

  testing::Gen g(16);
  for (int i = 0; i < 5; ++i) {
    auto m = testing::random_map(g);
    auto p = ulam_matrix(m, 97);
    for (double s : p.row_sums()) CHECK(std::abs(s - 1.0) < 1e-12);
    std::vector<double> uniform(97, 1.0 / 97);
    auto v = p.left_multiply(uniform);
    for (double x : v) CHECK(std::abs(x - 1.0 / 97) < 1e-8);
  }
  std::ostringstream os;
  write_ulam_csv(os, p2);
  CHECK(os.str().rfind("row,col,value\n", 0) == 0);
}

TEST_CASE("smooth branches") {
  SmoothBranch s{0, q(1, 2), [](double x) { return x + 2 * x * x; }, [](double x) { return 1 + 4 * x; }};
  auto m = FullBranchMap::mixed({{q(1, 2), 1, 2, -1}}, {s});
  CHECK(!m.is_affine());
  CHECK(m.apply(0.25) == doctest::Approx(0.375));
  CHECK(m.derivative(0.25) == doctest::Approx(2.0));
  CHECK(m.inverse(0, 0.375) == doctest::Approx(0.25).epsilon(1e-12));
  auto p = ulam_matrix(m, 64);
  for (double r : p.row_sums()) CHECK(std::abs(r - 1.0) < 1e-9);
  CHECK_THROWS_AS(preimage(m, iv(0, q(1, 2))), PreconditionError);
}

TEST_CASE("map serialization round trip") {
  auto m = FullBranchMap::affine({{0, q(1, 3), 3, 0}, {q(1, 3), 1, q(-3, 2), q(3, 2)}});
  auto back = map_from_json(map_to_json(m));
  REQUIRE(back.branch_count() == 2);
  CHECK(back.apply(q(1, 2)) == m.apply(q(1, 2)));
  CHECK(parse_map_spec("{\"builtin\":\"tripling\"}").branch_count() == 3);
  CHECK(parse_map_spec("{\"widths\":[\"1/2\",0.25,\"1/4\"]}").branch(1).width == q(1, 4));
  auto s = unite(iv(q(1, 3), q(1, 2)), iv(q(2, 3), 1));
  CHECK(set_from_json(set_to_json(s)) == s);
  CHECK(set_to_json(s).dump() == R"([["1/3","1/2"],["2/3","1"]])");
}

}
