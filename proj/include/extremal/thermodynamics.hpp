#ifndef EXTREMAL_THERMODYNAMICS_HPP
#define EXTREMAL_THERMODYNAMICS_HPP

#include "extremal/full_branch_map.hpp"
#include "extremal/rational.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace extremal {

inline constexpr std::size_t kDefaultPeriodCap = 20;
inline constexpr std::size_t kDefaultPeriodicPointBudget = 20000000;

/// A period-n point of an affine map, one per n-cylinder (symbolic
/// convention). `multiplier` is |DF^n| at the point.
struct PeriodicPoint {
  Rational point;
  Rational multiplier;
  std::vector<std::size_t> word;
  /// The closed-form solution was 1 and has been folded to 0.
  bool boundary_degenerate = false;
};

/// Potential Φ on [0,1).
class Potential {
public:
  enum class Kind { geometric, constant, per_branch, function };

  /// Φ = −log|DF|.
  static Potential geometric();
  static Potential constant(double value);
  /// Φ constant on each branch domain.
  static Potential per_branch(std::vector<double> values);
  static Potential function(std::function<double(double)> phi, std::string name = "function");
  /// "geometric", "zero", "constant:<c>" or "branch:<v0>,<v1>,...".
  static Potential parse(const std::string& text);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double value(const FullBranchMap& map, double x) const;

  /// Birkhoff sum S_nΦ at a periodic point.
  double birkhoff_sum(const FullBranchMap& map, const PeriodicPoint& p) const;

  /// n-th variation V_n(Φ): sup over n-cylinders of the oscillation of Φ.
  /// Exact (zero) for geometric potentials on affine maps and for constant
  /// and branch-wise constant potentials; sampled on a grid otherwise.
  double variation(const FullBranchMap& map, std::size_t n, std::size_t samples_per_cylinder = 16) const;

private:
  Kind kind_ = Kind::geometric;
  double constant_ = 0.0;
  std::vector<double> per_branch_;
  std::function<double(double)> phi_;
  std::string name_ = "geometric";
};

/// All d^n symbolic period-n points, one per word, in lexicographic word
/// order.
std::vector<PeriodicPoint> periodic_points(const FullBranchMap& map, std::size_t n,
                                           std::size_t cap = kDefaultPeriodCap,
                                           std::size_t budget = kDefaultPeriodicPointBudget);

/// Distinct points of [0,1) fixed by F^n, sorted. Symbolic solutions that
/// coincide after folding 1 to 0 are merged.
std::vector<PeriodicPoint> canonical_periodic_points(const FullBranchMap& map, std::size_t n,
                                                     std::size_t cap = kDefaultPeriodCap,
                                                     std::size_t budget = kDefaultPeriodicPointBudget);

/// Z_n(Φ) = Σ_{F^n x = x} e^{S_nΦ(x)} over symbolic periodic points.
double partition_sum(const FullBranchMap& map, const Potential& potential, std::size_t n,
                     std::size_t cap = kDefaultPeriodCap);

/// Exact Z_n for the geometric potential: Σ 1/|DF^n|.
Rational geometric_partition_sum(const FullBranchMap& map, std::size_t n,
                                 std::size_t cap = kDefaultPeriodCap);

struct PressureRow {
  std::size_t n;
  double z;
  double pressure;
};

/// (1/n) log Z_n for n = 1..n_max.
std::vector<PressureRow> pressure(const FullBranchMap& map, const Potential& potential,
                                  std::size_t n_max, std::size_t cap = kDefaultPeriodCap);

/// 1 − exp(S_pΦ(ζ) − p·P) for a period-p point ζ, with P the finite-n
/// pressure approximant at `pressure_n`.
double thermodynamic_theta(const FullBranchMap& map, const Potential& potential,
                           const Rational& zeta, std::size_t p, std::size_t pressure_n = 10);

} // namespace extremal

#endif
