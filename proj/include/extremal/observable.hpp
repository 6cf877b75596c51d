#ifndef EXTREMAL_OBSERVABLE_HPP
#define EXTREMAL_OBSERVABLE_HPP

#include "extremal/interval_set.hpp"
#include "extremal/rational.hpp"

#include <string>

namespace extremal {

/// Distance on the circle R/Z.
double circle_distance(double x, double y);

/// φ maximized at a center point ζ, with ball-shaped super-level sets.
///   neg-log:  φ(x) = −log d(x,ζ)
///   power:    φ(x) = C − d(x,ζ)^β
class Observable {
public:
  enum class Profile { neg_log, power };

  static Observable neg_log(Rational center);
  static Observable power(Rational center, double beta, double c);

  Profile profile() const { return profile_; }
  const Rational& center() const { return center_; }
  double center_d() const { return center_d_; }
  double beta() const { return beta_; }
  double c() const { return c_; }
  std::string profile_name() const;

  double value(double x) const;
  /// sup φ; +inf for the neg-log profile.
  double sup() const;
  /// ρ(u), the radius of {φ > u}.
  double radius_for(double u) const;
  /// The level u with ρ(u) = r.
  double level_for_radius(double r) const;

private:
  Profile profile_ = Profile::neg_log;
  Rational center_;
  double center_d_ = 0.0;
  double beta_ = 1.0;
  double c_ = 0.0;
};

} // namespace extremal

#endif
