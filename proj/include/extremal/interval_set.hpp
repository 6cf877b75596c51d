#ifndef EXTREMAL_INTERVAL_SET_HPP
#define EXTREMAL_INTERVAL_SET_HPP

#include "extremal/rational.hpp"

#include <cstddef>
#include <vector>

namespace extremal {

/// Circle sets may wrap across 0; a wrapping set is stored as two components,
/// one starting at 0 and one ending at 1.
enum class Topology { circle, line };

const char* to_string(Topology topology);

/// A subinterval of [0,1) with lo < hi. Endpoint openness is not tracked:
/// everything here is up to measure-zero equivalence.
template <class S>
struct Interval {
  S lo;
  S hi;

  Interval(S lo_, S hi_);
  S length() const { return S(hi - lo); }
  bool contains(const S& x) const { return lo <= x && x < hi; }
};

template <class S>
bool operator==(const Interval<S>& a, const Interval<S>& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

/// Finite disjoint union of subintervals of [0,1), kept in canonical form:
/// sorted, pairwise disjoint, separated by gaps of positive length.
///
/// `S` is either `Rational` (exact mode) or `double` (floating mode). In
/// floating mode components closer than `kFloatingMergeGap` are merged.
template <class S>
class IntervalUnion {
public:
  using scalar_type = S;

  explicit IntervalUnion(Topology topology = Topology::circle) : topology_(topology) {}

  /// Builds the canonical form of an arbitrary list of intervals. Intervals
  /// are clipped to [0,1]; empty ones are dropped.
  static IntervalUnion from_intervals(std::vector<Interval<S>> parts,
                                      Topology topology = Topology::circle);
  static IntervalUnion interval(const S& lo, const S& hi,
                                Topology topology = Topology::circle);
  static IntervalUnion full(Topology topology = Topology::circle);

  const std::vector<Interval<S>>& components() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  bool is_full() const;
  Topology topology() const { return topology_; }

  /// Components on the circle: a set touching both 0 and 1 counts its two
  /// edge pieces once.
  std::size_t wrapped_component_count() const;

  S measure() const;
  bool contains(const S& x) const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.topology_ == b.topology_ && a.parts_ == b.parts_;
  }

private:
  std::vector<Interval<S>> parts_;
  Topology topology_;

  template <class T> friend IntervalUnion<T> unite(const IntervalUnion<T>&, const IntervalUnion<T>&);
  template <class T> friend IntervalUnion<T> intersect(const IntervalUnion<T>&, const IntervalUnion<T>&);
  template <class T> friend IntervalUnion<T> complement(const IntervalUnion<T>&);
};

inline constexpr double kFloatingMergeGap = 1e-14;

template <class S> IntervalUnion<S> unite(const IntervalUnion<S>& a, const IntervalUnion<S>& b);
template <class S> IntervalUnion<S> intersect(const IntervalUnion<S>& a, const IntervalUnion<S>& b);
template <class S> IntervalUnion<S> complement(const IntervalUnion<S>& a);
template <class S> IntervalUnion<S> difference(const IntervalUnion<S>& a, const IntervalUnion<S>& b);
template <class S> S measure(const IntervalUnion<S>& a) { return a.measure(); }
template <class S> bool is_subset(const IntervalUnion<S>& a, const IntervalUnion<S>& b);

/// Open ball of the given radius. On the circle it has measure 2*radius and
/// may wrap; on the line it is clipped to [0,1]. Requires 0 < radius < 1/2.
template <class S>
IntervalUnion<S> ball(const S& center, const S& radius, Topology topology = Topology::circle);

IntervalUnion<double> to_floating(const IntervalUnion<Rational>& exact);

/// Variation-only BV norm of the indicator: 2 per component on the line.
template <class S>
double bv_norm_indicator(const IntervalUnion<S>& set) {
  return 2.0 * static_cast<double>(set.size());
}

using ExactSet = IntervalUnion<Rational>;
using FloatSet = IntervalUnion<double>;

} // namespace extremal

#endif
