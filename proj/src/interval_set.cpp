#include "extremal/interval_set.hpp"

#include "extremal/errors.hpp"

#include <algorithm>
#include <cmath>

namespace extremal {
namespace {

template <class S> bool separated(const S& gap);
template <> bool separated<Rational>(const Rational& gap) { return gap > 0; }
template <> bool separated<double>(const double& gap) { return gap > kFloatingMergeGap; }

template <class S> bool positive_length(const S& lo, const S& hi);
template <> bool positive_length<Rational>(const Rational& lo, const Rational& hi) { return lo < hi; }
template <> bool positive_length<double>(const double& lo, const double& hi) { return lo < hi; }

template <class S> bool finite(const S&) { return true; }
template <> bool finite<double>(const double& x) { return std::isfinite(x); }

// Merges an already sorted sequence into canonical form.
template <class S>
std::vector<Interval<S>> merge_sorted(const std::vector<Interval<S>>& sorted) {
  std::vector<Interval<S>> out;
  out.reserve(sorted.size());
  for (const auto& piece : sorted) {
    if (!out.empty() && !separated<S>(S(piece.lo - out.back().hi))) {
      if (out.back().hi < piece.hi) out.back().hi = piece.hi;
    } else {
      out.push_back(piece);
    }
  }
  return out;
}

void require_same_topology(Topology a, Topology b) {
  if (a != b) throw PreconditionError("interval sets have different topologies");
}

} // namespace

const char* to_string(Topology topology) {
  return topology == Topology::circle ? "circle" : "line";
}

template <class S>
Interval<S>::Interval(S lo_, S hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!finite<S>(lo) || !finite<S>(hi) || !(lo < hi))
    throw PreconditionError("interval requires finite lo < hi");
}

template <class S>
IntervalUnion<S> IntervalUnion<S>::from_intervals(std::vector<Interval<S>> parts, Topology topology) {
  const S zero(0), one(1);
  std::vector<Interval<S>> clipped;
  clipped.reserve(parts.size());
  for (auto& p : parts) {
    S lo = p.lo < zero ? zero : p.lo;
    S hi = one < p.hi ? one : p.hi;
    if (positive_length<S>(lo, hi)) clipped.emplace_back(std::move(lo), std::move(hi));
  }
  std::sort(clipped.begin(), clipped.end(),
            [](const Interval<S>& a, const Interval<S>& b) { return a.lo < b.lo; });
  IntervalUnion result(topology);
  result.parts_ = merge_sorted(clipped);
  return result;
}

template <class S>
IntervalUnion<S> IntervalUnion<S>::interval(const S& lo, const S& hi, Topology topology) {
  return from_intervals({Interval<S>(lo, hi)}, topology);
}

template <class S>
IntervalUnion<S> IntervalUnion<S>::full(Topology topology) {
  return interval(S(0), S(1), topology);
}

template <class S>
bool IntervalUnion<S>::is_full() const {
  return parts_.size() == 1 && parts_[0].lo == S(0) && parts_[0].hi == S(1);
}

template <class S>
std::size_t IntervalUnion<S>::wrapped_component_count() const {
  std::size_t n = parts_.size();
  if (topology_ == Topology::circle && n >= 2 && parts_.front().lo == S(0) &&
      parts_.back().hi == S(1))
    --n;
  return n;
}

template <class S>
S IntervalUnion<S>::measure() const {
  S total(0);
  for (const auto& p : parts_) total += p.hi - p.lo;
  return total;
}

template <class S>
bool IntervalUnion<S>::contains(const S& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const S& v, const Interval<S>& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

template <class S>
IntervalUnion<S> unite(const IntervalUnion<S>& a, const IntervalUnion<S>& b) {
  require_same_topology(a.topology_, b.topology_);
  std::vector<Interval<S>> all;
  all.reserve(a.parts_.size() + b.parts_.size());
  std::merge(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
             std::back_inserter(all),
             [](const Interval<S>& x, const Interval<S>& y) { return x.lo < y.lo; });
  IntervalUnion<S> result(a.topology_);
  result.parts_ = merge_sorted(all);
  return result;
}

template <class S>
IntervalUnion<S> intersect(const IntervalUnion<S>& a, const IntervalUnion<S>& b) {
  require_same_topology(a.topology_, b.topology_);
  IntervalUnion<S> result(a.topology_);
  std::size_t i = 0, j = 0;
  while (i < a.parts_.size() && j < b.parts_.size()) {
    const auto& x = a.parts_[i];
    const auto& y = b.parts_[j];
    const S& lo = x.lo < y.lo ? y.lo : x.lo;
    const S& hi = x.hi < y.hi ? x.hi : y.hi;
    if (positive_length<S>(lo, hi)) result.parts_.emplace_back(lo, hi);
    if (x.hi < y.hi) ++i; else ++j;
  }
  // Floating-mode pieces may now sit within the merge gap of each other.
  if constexpr (std::is_same_v<S, double>) result.parts_ = merge_sorted(result.parts_);
  return result;
}

template <class S>
IntervalUnion<S> complement(const IntervalUnion<S>& a) {
  IntervalUnion<S> result(a.topology_);
  S cursor(0);
  for (const auto& p : a.parts_) {
    if (positive_length<S>(cursor, p.lo)) result.parts_.emplace_back(cursor, p.lo);
    cursor = p.hi;
  }
  if (positive_length<S>(cursor, S(1))) result.parts_.emplace_back(cursor, S(1));
  return result;
}

template <class S>
IntervalUnion<S> difference(const IntervalUnion<S>& a, const IntervalUnion<S>& b) {
  return intersect(a, complement(b));
}

template <class S>
bool is_subset(const IntervalUnion<S>& a, const IntervalUnion<S>& b) {
  return intersect(a, b) == a;
}

template <class S>
IntervalUnion<S> ball(const S& center, const S& radius, Topology topology) {
  if (!(S(0) < radius) || !(radius < S(1) / S(2)))
    throw PreconditionError("ball radius must lie in (0, 1/2)");
  if (center < S(0) || !(center < S(1)))
    throw PreconditionError("ball center must lie in [0, 1)");
  S lo = center - radius;
  S hi = center + radius;
  if (topology == Topology::line) return IntervalUnion<S>::interval(lo, hi, topology);

  std::vector<Interval<S>> parts;
  if (lo < S(0)) {
    parts.emplace_back(S(0), hi);
    parts.emplace_back(S(lo + S(1)), S(1));
  } else if (S(1) < hi) {
    parts.emplace_back(lo, S(1));
    parts.emplace_back(S(0), S(hi - S(1)));
  } else {
    parts.emplace_back(lo, hi);
  }
  return IntervalUnion<S>::from_intervals(std::move(parts), topology);
}

IntervalUnion<double> to_floating(const IntervalUnion<Rational>& exact) {
  std::vector<Interval<double>> parts;
  parts.reserve(exact.size());
  for (const auto& p : exact.components()) {
    double lo = p.lo.get_d(), hi = p.hi.get_d();
    if (lo < hi) parts.emplace_back(lo, hi);
  }
  return IntervalUnion<double>::from_intervals(std::move(parts), exact.topology());
}

#define EXTREMAL_INSTANTIATE(S)                                                          \
  template struct Interval<S>;                                                           \
  template class IntervalUnion<S>;                                                       \
  template IntervalUnion<S> unite(const IntervalUnion<S>&, const IntervalUnion<S>&);     \
  template IntervalUnion<S> intersect(const IntervalUnion<S>&, const IntervalUnion<S>&); \
  template IntervalUnion<S> complement(const IntervalUnion<S>&);                         \
  template IntervalUnion<S> difference(const IntervalUnion<S>&, const IntervalUnion<S>&);\
  template bool is_subset(const IntervalUnion<S>&, const IntervalUnion<S>&);             \
  template IntervalUnion<S> ball(const S&, const S&, Topology);

EXTREMAL_INSTANTIATE(Rational)
EXTREMAL_INSTANTIATE(double)

} // namespace extremal
