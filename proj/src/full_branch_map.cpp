#include "extremal/full_branch_map.hpp"

#include "extremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace extremal {
namespace {

Branch make_branch(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw PreconditionError("branch domain must satisfy lo < hi");
  Branch b;
  b.lo = lo;
  b.hi = hi;
  b.width = hi - lo;
  b.lo_d = lo.get_d();
  b.hi_d = hi.get_d();
  b.width_d = b.width.get_d();
  return b;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

} // namespace

FullBranchMap FullBranchMap::affine(std::vector<AffineBranch> branches, std::string name) {
  return mixed(std::move(branches), {}, std::move(name));
}

FullBranchMap FullBranchMap::mixed(std::vector<AffineBranch> affine_part,
                                   std::vector<SmoothBranch> smooth_part, std::string name) {
  FullBranchMap map;
  map.name_ = std::move(name);
  for (auto& a : affine_part) {
    Branch b = make_branch(a.lo, a.hi);
    if (a.slope == 0) throw PreconditionError("affine branch slope must be nonzero");
    b.increasing = a.slope > 0;
    b.slope = a.slope;
    b.intercept = a.intercept;
    map.branches_.push_back(std::move(b));
  }
  for (auto& s : smooth_part) {
    if (!s.value || !s.derivative)
      throw PreconditionError("smooth branch needs value and derivative");
    Branch b = make_branch(s.lo, s.hi);
    b.value = std::move(s.value);
    b.derivative = std::move(s.derivative);
    b.increasing = b.value(b.lo_d) < b.value(b.lo_d + 0.5 * b.width_d);
    map.affine_ = false;
    map.branches_.push_back(std::move(b));
  }
  std::sort(map.branches_.begin(), map.branches_.end(),
            [](const Branch& x, const Branch& y) { return x.lo < y.lo; });
  map.validate();
  return map;
}

void FullBranchMap::validate() {
  if (branches_.size() < 2) throw PreconditionError("a full-branch map needs at least 2 branches");
  if (branches_.front().lo != 0 || branches_.back().hi != 1)
    throw PreconditionError("branch domains must cover [0,1)");
  for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
    if (branches_[i].hi != branches_[i + 1].lo)
      throw PreconditionError("branch domains must be contiguous and disjoint");

  for (const auto& b : branches_) {
    if (b.affine()) {
      Rational expected = 1 / b.width;
      if (abs(*b.slope) != expected)
        throw PreconditionError("affine branch slope must have modulus 1/width");
      Rational start = *b.slope * b.lo + *b.intercept;
      if (start != (b.increasing ? 0 : 1))
        throw PreconditionError("affine branch does not map its domain onto [0,1)");
    } else {
      const double tol = 1e-9;
      double v0 = b.value(b.lo_d), v1 = b.value(b.hi_d);
      double want0 = b.increasing ? 0.0 : 1.0, want1 = b.increasing ? 1.0 : 0.0;
      if (std::abs(v0 - want0) > tol || std::abs(v1 - want1) > tol)
        throw PreconditionError("smooth branch does not map its domain onto [0,1)");
      for (int k = 0; k <= 32; ++k) {
        double x = b.lo_d + b.width_d * (k + 0.5) / 33.0;
        if (!(std::abs(b.derivative(x)) > 1.0))
          throw PreconditionError("branch is not expanding");
      }
    }
  }
}

FullBranchMap FullBranchMap::from_widths(const std::vector<Rational>& widths,
                                         const std::vector<bool>& increasing, std::string name) {
  if (!increasing.empty() && increasing.size() != widths.size())
    throw PreconditionError("orientation list length must match widths");
  std::vector<AffineBranch> branches;
  Rational lo = 0;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] <= 0) throw PreconditionError("branch widths must be positive");
    Rational hi = lo + widths[i];
    bool up = increasing.empty() || increasing[i];
    Rational slope = up ? Rational(1 / widths[i]) : Rational(-1 / widths[i]);
    Rational intercept = up ? Rational(-slope * lo) : Rational(1 - slope * lo);
    branches.push_back({lo, hi, slope, intercept});
    lo = hi;
  }
  if (lo != 1) throw PreconditionError("branch widths must sum to 1");
  if (name.empty()) {
    name = "widths:";
    for (std::size_t i = 0; i < widths.size(); ++i)
      name += (i ? "," : "") + to_string(widths[i]);
  }
  return affine(std::move(branches), std::move(name));
}

FullBranchMap FullBranchMap::doubling() {
  return from_widths({Rational(1, 2), Rational(1, 2)}, {}, "doubling");
}

FullBranchMap FullBranchMap::tripling() {
  return from_widths({Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {}, "tripling");
}

FullBranchMap FullBranchMap::builtin(const std::string& name) {
  if (name == "doubling") return doubling();
  if (name == "tripling") return tripling();
  const std::string prefix = "widths:";
  if (name.rfind(prefix, 0) == 0) {
    std::vector<Rational> widths;
    for (const auto& part : split(name.substr(prefix.size()), ','))
      widths.push_back(parse_rational(part));
    return from_widths(widths);
  }
  throw PreconditionError("unknown map '" + name + "'");
}

Rational FullBranchMap::max_width() const {
  Rational w = 0;
  for (const auto& b : branches_) w = std::max(w, b.width);
  return w;
}

bool FullBranchMap::is_doubling() const {
  return affine_ && branches_.size() == 2 && branches_[0].width == Rational(1, 2) &&
         branches_[0].increasing && branches_[1].increasing;
}

void FullBranchMap::require_affine(const char* operation) const {
  if (!affine_)
    throw PreconditionError(std::string(operation) + " requires an affine map");
}

std::size_t FullBranchMap::branch_of(const Rational& x) const {
  if (x < 0 || x >= 1) throw PreconditionError("point must lie in [0,1)");
  auto it = std::upper_bound(branches_.begin(), branches_.end(), x,
                             [](const Rational& v, const Branch& b) { return v < b.lo; });
  std::size_t i = static_cast<std::size_t>(it - branches_.begin()) - 1;
  if (i > 0 && branches_[i].lo == x) throw BoundaryPoint("point lies on a branch boundary");
  return i;
}

std::size_t FullBranchMap::branch_of(double x) const {
  if (!(x >= 0.0) || !(x < 1.0)) throw PreconditionError("point must lie in [0,1)");
  auto it = std::upper_bound(branches_.begin(), branches_.end(), x,
                             [](double v, const Branch& b) { return v < b.lo_d; });
  std::size_t i = static_cast<std::size_t>(it - branches_.begin()) - 1;
  if (i > 0 && branches_[i].lo_d == x) throw BoundaryPoint("point lies on a branch boundary");
  return i;
}

namespace {

template <class S>
std::size_t locate(const std::vector<Branch>& branches, const S& x) {
  std::size_t i = branches.size() - 1;
  while (i > 0) {
    if constexpr (std::is_same_v<S, double>) {
      if (branches[i].lo_d <= x) break;
    } else {
      if (branches[i].lo <= x) break;
    }
    --i;
  }
  return i;
}

} // namespace

std::size_t FullBranchMap::containing_branch(const Rational& x) const {
  if (x < 0 || x >= 1) throw PreconditionError("point must lie in [0,1)");
  return locate(branches_, x);
}

Rational FullBranchMap::apply(const Rational& x) const {
  require_affine("exact apply");
  if (x < 0 || x >= 1) throw PreconditionError("point must lie in [0,1)");
  const Branch& b = branches_[locate(branches_, x)];
  Rational y = *b.slope * x + *b.intercept;
  if (y >= 1) y -= 1;
  return y;
}

double FullBranchMap::apply(double x) const {
  if (!(x >= 0.0) || !(x < 1.0)) throw PreconditionError("point must lie in [0,1)");
  const Branch& b = branches_[locate(branches_, x)];
  double y = b.affine() ? (b.increasing ? (x - b.lo_d) / b.width_d : (b.hi_d - x) / b.width_d)
                        : b.value(x);
  if (y >= 1.0) y -= 1.0;
  if (y < 0.0) y = 0.0;
  return y;
}

double FullBranchMap::derivative(double x) const {
  const Branch& b = branches_[branch_of(x)];
  return b.affine() ? b.slope->get_d() : b.derivative(x);
}

Rational FullBranchMap::derivative(const Rational& x) const {
  require_affine("exact derivative");
  return *branches_[branch_of(x)].slope;
}

Rational FullBranchMap::inverse(std::size_t i, const Rational& y) const {
  require_affine("exact inverse");
  const Branch& b = branches_.at(i);
  return b.increasing ? Rational(b.lo + b.width * y) : Rational(b.hi - b.width * y);
}

double FullBranchMap::inverse(std::size_t i, double y) const {
  const Branch& b = branches_.at(i);
  if (b.affine()) return b.increasing ? b.lo_d + b.width_d * y : b.hi_d - b.width_d * y;
  double lo = b.lo_d, hi = b.hi_d;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    double mid = 0.5 * (lo + hi);
    bool below = b.value(mid) < y;
    if (below == b.increasing) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <class S>
IntervalUnion<S> preimage(const FullBranchMap& map, const IntervalUnion<S>& set) {
  if constexpr (std::is_same_v<S, Rational>) map.require_affine("exact preimage");
  std::vector<Interval<S>> parts;
  parts.reserve(set.size() * map.branch_count());
  for (std::size_t i = 0; i < map.branch_count(); ++i) {
    bool up = map.branch(i).increasing;
    for (const auto& c : set.components()) {
      S a = map.inverse(i, c.lo), b = map.inverse(i, c.hi);
      if (up) {
        if (a < b) parts.emplace_back(std::move(a), std::move(b));
      } else {
        if (b < a) parts.emplace_back(std::move(b), std::move(a));
      }
    }
  }
  return IntervalUnion<S>::from_intervals(std::move(parts), set.topology());
}

template <class S>
IntervalUnion<S> image(const FullBranchMap& map, const IntervalUnion<S>& set) {
  map.require_affine("image");
  std::vector<Interval<S>> parts;
  for (const auto& b : map.branches()) {
    S lo = scalar_cast<S>(b.lo), hi = scalar_cast<S>(b.hi), w = scalar_cast<S>(b.width);
    for (const auto& c : set.components()) {
      S x0 = c.lo < lo ? lo : c.lo;
      S x1 = hi < c.hi ? hi : c.hi;
      if (!(x0 < x1)) continue;
      if (b.increasing) {
        parts.emplace_back(S((x0 - lo) / w), S((x1 - lo) / w));
      } else {
        parts.emplace_back(S((hi - x1) / w), S((hi - x0) / w));
      }
    }
  }
  return IntervalUnion<S>::from_intervals(std::move(parts), set.topology());
}

template IntervalUnion<Rational> preimage(const FullBranchMap&, const IntervalUnion<Rational>&);
template IntervalUnion<double> preimage(const FullBranchMap&, const IntervalUnion<double>&);
template IntervalUnion<Rational> image(const FullBranchMap&, const IntervalUnion<Rational>&);
template IntervalUnion<double> image(const FullBranchMap&, const IntervalUnion<double>&);

IntervalUnion<Rational> preimage_power(const FullBranchMap& map, const IntervalUnion<Rational>& set,
                                       std::size_t j) {
  IntervalUnion<Rational> out = set;
  for (std::size_t i = 0; i < j; ++i) out = preimage(map, out);
  return out;
}

namespace {

// A piece of the original set that T^m maps affinely onto [a,b). A point y of
// the image comes from x = offset + scale*y.
struct Piece {
  Rational a;
  Rational b;
  Rational offset;
  Rational scale;
};

template <class Emit>
void step_piece(const FullBranchMap& map, const Piece& p, Emit&& emit) {
  for (const auto& br : map.branches()) {
    if (br.hi <= p.a) continue;
    if (p.b <= br.lo) break;
    const Rational& x0 = p.a < br.lo ? br.lo : p.a;
    const Rational& x1 = br.hi < p.b ? br.hi : p.b;
    Piece child;
    if (br.increasing) {
      child.a = (x0 - br.lo) / br.width;
      child.b = (x1 - br.lo) / br.width;
      child.offset = p.offset + p.scale * br.lo;
      child.scale = p.scale * br.width;
    } else {
      child.a = (br.hi - x1) / br.width;
      child.b = (br.hi - x0) / br.width;
      child.offset = p.offset + p.scale * br.hi;
      child.scale = -p.scale * br.width;
    }
    emit(std::move(child));
  }
}

std::vector<Piece> initial_pieces(const IntervalUnion<Rational>& set) {
  std::vector<Piece> pieces;
  for (const auto& c : set.components()) pieces.push_back({c.lo, c.hi, Rational(0), Rational(1)});
  return pieces;
}

Rational measure_within(const IntervalUnion<Rational>& set, const Rational& a, const Rational& b) {
  const auto& parts = set.components();
  auto it = std::upper_bound(parts.begin(), parts.end(), a,
                             [](const Rational& v, const Interval<Rational>& c) { return v < c.hi; });
  Rational total = 0;
  for (; it != parts.end() && it->lo < b; ++it) {
    const Rational& lo = it->lo < a ? a : it->lo;
    const Rational& hi = b < it->hi ? b : it->hi;
    if (lo < hi) total += hi - lo;
  }
  return total;
}

} // namespace

IntervalUnion<Rational> local_preimage(const FullBranchMap& map,
                                       const IntervalUnion<Rational>& target, std::size_t j,
                                       const IntervalUnion<Rational>& within,
                                       std::size_t piece_budget) {
  map.require_affine("local preimage");
  std::vector<Piece> pieces = initial_pieces(within);
  for (std::size_t step = 0; step < j; ++step) {
    std::vector<Piece> next;
    for (const auto& p : pieces) {
      step_piece(map, p, [&](Piece&& c) { next.push_back(std::move(c)); });
      if (next.size() > piece_budget)
        throw BudgetExceeded("local preimage exceeded its piece budget");
    }
    pieces = std::move(next);
  }

  std::vector<Interval<Rational>> parts;
  const auto& tparts = target.components();
  for (const auto& p : pieces) {
    auto it = std::upper_bound(tparts.begin(), tparts.end(), p.a,
                               [](const Rational& v, const Interval<Rational>& c) { return v < c.hi; });
    for (; it != tparts.end() && it->lo < p.b; ++it) {
      Rational y0 = it->lo < p.a ? p.a : it->lo;
      Rational y1 = p.b < it->hi ? p.b : it->hi;
      if (!(y0 < y1)) continue;
      Rational x0 = p.offset + p.scale * y0;
      Rational x1 = p.offset + p.scale * y1;
      if (x1 < x0) std::swap(x0, x1);
      parts.emplace_back(std::move(x0), std::move(x1));
    }
  }
  return IntervalUnion<Rational>::from_intervals(std::move(parts), within.topology());
}

std::vector<Rational> overlap_series(const FullBranchMap& map, const IntervalUnion<Rational>& a,
                                     const IntervalUnion<Rational>& b, std::size_t j_max) {
  map.require_affine("overlap series");
  struct Partial {
    Rational lo;
    Rational hi;
    Rational weight;
  };
  std::vector<Partial> partial;
  for (const auto& c : a.components()) partial.push_back({c.lo, c.hi, Rational(1)});
  Rational retired = 0;
  const Rational mb = b.measure();

  std::vector<Rational> out;
  out.reserve(j_max + 1);
  out.push_back(intersect(a, b).measure());
  for (std::size_t j = 1; j <= j_max; ++j) {
    std::vector<Partial> next;
    for (const auto& p : partial) {
      Piece piece{p.lo, p.hi, Rational(0), p.weight};
      step_piece(map, piece, [&](Piece&& c) {
        Rational w = abs(c.scale);
        if (c.a == 0 && c.b == 1) {
          retired += w;
        } else {
          next.push_back({std::move(c.a), std::move(c.b), std::move(w)});
        }
      });
    }
    partial = std::move(next);
    Rational total = retired * mb;
    for (const auto& p : partial) total += p.weight * measure_within(b, p.lo, p.hi);
    out.push_back(std::move(total));
  }
  return out;
}

std::optional<std::size_t> first_return_time(const FullBranchMap& map,
                                             const IntervalUnion<Rational>& a,
                                             std::size_t horizon) {
  map.require_affine("first return time");
  if (a.empty()) throw PreconditionError("first return time needs a set of positive measure");
  std::vector<Piece> pieces = initial_pieces(a);
  for (std::size_t j = 1; j <= horizon; ++j) {
    std::vector<Piece> next;
    bool hit = false;
    for (const auto& p : pieces) {
      step_piece(map, p, [&](Piece&& c) {
        if (hit) return;
        if ((c.a == 0 && c.b == 1) || measure_within(a, c.a, c.b) > 0) {
          hit = true;
          return;
        }
        c.offset = 0;
        c.scale = 1;
        next.push_back(std::move(c));
      });
      if (hit) return j;
    }
    pieces = std::move(next);
  }
  return std::nullopt;
}

} // namespace extremal
