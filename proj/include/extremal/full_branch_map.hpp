#ifndef EXTREMAL_FULL_BRANCH_MAP_HPP
#define EXTREMAL_FULL_BRANCH_MAP_HPP

#include "extremal/interval_set.hpp"
#include "extremal/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace extremal {

/// Affine branch x -> slope*x + intercept on [lo, hi).
struct AffineBranch {
  Rational lo;
  Rational hi;
  Rational slope;
  Rational intercept;
};

/// Monotone non-affine branch. `value` maps [lo, hi) onto [0,1); `derivative`
/// is its derivative.
struct SmoothBranch {
  Rational lo;
  Rational hi;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct Branch {
  Rational lo;
  Rational hi;
  Rational width;
  bool increasing = true;
  // Present for affine branches.
  std::optional<Rational> slope;
  std::optional<Rational> intercept;
  // Present for smooth branches.
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  double lo_d = 0.0;
  double hi_d = 1.0;
  double width_d = 1.0;

  bool affine() const { return slope.has_value(); }
};

/// A piecewise full-branch map of [0,1): each branch is a monotone bijection
/// of its domain onto [0,1), domains are half-open and tile [0,1).
class FullBranchMap {
public:
  static FullBranchMap affine(std::vector<AffineBranch> branches, std::string name = "custom");
  /// Affine map with branch domains of the given widths, laid out left to
  /// right; all branches increasing unless `orientation` says otherwise.
  static FullBranchMap from_widths(const std::vector<Rational>& widths,
                                   const std::vector<bool>& increasing = {},
                                   std::string name = "");
  /// Branches may mix affine and smooth kinds.
  static FullBranchMap mixed(std::vector<AffineBranch> affine_part,
                             std::vector<SmoothBranch> smooth_part,
                             std::string name = "custom");
  static FullBranchMap doubling();
  static FullBranchMap tripling();
  /// "doubling", "tripling", or "widths:1/2,1/4,1/4".
  static FullBranchMap builtin(const std::string& name);

  std::size_t branch_count() const { return branches_.size(); }
  const Branch& branch(std::size_t i) const { return branches_.at(i); }
  const std::vector<Branch>& branches() const { return branches_; }
  bool is_affine() const { return affine_; }
  const std::string& name() const { return name_; }
  Rational max_width() const;
  /// True when every branch has width 1/2 and is increasing.
  bool is_doubling() const;

  /// Branch whose half-open domain contains x. Throws BoundaryPoint when x
  /// is an interior branch endpoint.
  std::size_t branch_of(const Rational& x) const;
  std::size_t branch_of(double x) const;
  /// Branch used by apply(): the one whose half-open domain holds x.
  std::size_t containing_branch(const Rational& x) const;

  /// Image of x under the branch whose half-open domain contains it, reduced
  /// into [0,1).
  Rational apply(const Rational& x) const;
  double apply(double x) const;
  double derivative(double x) const;
  Rational derivative(const Rational& x) const;

  /// Inverse of branch i at y in [0,1].
  Rational inverse(std::size_t i, const Rational& y) const;
  double inverse(std::size_t i, double y) const;

  void require_affine(const char* operation) const;

private:
  std::vector<Branch> branches_;
  bool affine_ = true;
  std::string name_;

  void validate();
};

/// T^{-1}(S). Affine maps only in exact mode; floating mode also handles
/// smooth branches by numerical inversion.
template <class S>
IntervalUnion<S> preimage(const FullBranchMap& map, const IntervalUnion<S>& set);

/// T(S), the union of the branch images of S ∩ C_i. Affine maps only.
template <class S>
IntervalUnion<S> image(const FullBranchMap& map, const IntervalUnion<S>& set);

IntervalUnion<Rational> preimage_power(const FullBranchMap& map, const IntervalUnion<Rational>& set,
                                       std::size_t j);

/// Part of `within` mapped by T^j into `target`: within ∩ T^{-j}(target).
/// Cost scales with how often the forward images of `within` get cut by
/// branch boundaries, so it is cheap when `within` is small.
IntervalUnion<Rational> local_preimage(const FullBranchMap& map,
                                       const IntervalUnion<Rational>& target, std::size_t j,
                                       const IntervalUnion<Rational>& within,
                                       std::size_t piece_budget = 1000000);

/// measure(A ∩ T^{-j}B) for j = 0..j_max (entry j). Affine maps only. Pieces
/// of A whose forward image covers [0,1) contribute |piece|·|B| from then on,
/// so only partially mapped pieces are tracked.
std::vector<Rational> overlap_series(const FullBranchMap& map, const IntervalUnion<Rational>& a,
                                     const IntervalUnion<Rational>& b, std::size_t j_max);

/// Smallest j in [1, horizon] with measure(T^j(A) ∩ A) > 0, or nullopt.
std::optional<std::size_t> first_return_time(const FullBranchMap& map,
                                             const IntervalUnion<Rational>& a,
                                             std::size_t horizon);

} // namespace extremal

#endif
