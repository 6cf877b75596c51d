#ifndef EXTREMAL_TEST_SUPPORT_HPP
#define EXTREMAL_TEST_SUPPORT_HPP

#include "extremal/full_branch_map.hpp"
#include "extremal/interval_set.hpp"
#include "extremal/rational.hpp"

#include <random>
#include <vector>

namespace testing {

using extremal::Rational;
using Gen = std::mt19937_64;

inline long uniform(Gen& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

/// Random union with endpoints on the grid k/den, wrapping allowed.
inline extremal::ExactSet random_set(Gen& g, long den = 64, int max_parts = 4,
                                     extremal::Topology top = extremal::Topology::circle) {
  std::vector<extremal::Interval<Rational>> parts;
  int n = static_cast<int>(uniform(g, 0, max_parts));
  for (int i = 0; i < n; ++i) {
    long a = uniform(g, 0, den - 1), b = uniform(g, a + 1, den);
    parts.emplace_back(q(a, den), q(b, den));
  }
  return extremal::ExactSet::from_intervals(parts, top);
}

/// Random affine full-branch map with 2..4 branches of dyadic-ish widths.
inline extremal::FullBranchMap random_map(Gen& g) {
  long d = uniform(g, 2, 4);
  long den = 16;
  std::vector<Rational> widths;
  long left = den;
  for (long i = 0; i < d - 1; ++i) {
    long w = uniform(g, 1, left - (d - 1 - i));
    widths.push_back(q(w, den));
    left -= w;
  }
  widths.push_back(q(left, den));
  std::vector<bool> inc;
  for (long i = 0; i < d; ++i) inc.push_back(uniform(g, 0, 3) != 0);
  return extremal::FullBranchMap::from_widths(widths, inc);
}

/// Grid points (2k+1)/(2·den): never an endpoint of a set on the den grid.
inline std::vector<Rational> probe_grid(long den) {
  std::vector<Rational> out;
  for (long k = 0; k < den; ++k) out.push_back(q(2 * k + 1, 2 * den));
  return out;
}

} // namespace testing

#endif
