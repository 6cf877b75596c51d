#include "extremal/observable.hpp"

#include "extremal/errors.hpp"

#include <cmath>
#include <limits>

namespace extremal {

double circle_distance(double x, double y) {
  double d = std::abs(x - y);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

Observable Observable::neg_log(Rational center) {
  if (center < 0 || center >= 1) throw PreconditionError("observable center must lie in [0,1)");
  Observable o;
  o.profile_ = Profile::neg_log;
  o.center_d_ = center.get_d();
  o.center_ = std::move(center);
  return o;
}

Observable Observable::power(Rational center, double beta, double c) {
  if (center < 0 || center >= 1) throw PreconditionError("observable center must lie in [0,1)");
  if (!(beta > 0.0) || !std::isfinite(c)) throw PreconditionError("power profile needs beta > 0 and finite C");
  Observable o;
  o.profile_ = Profile::power;
  o.center_d_ = center.get_d();
  o.center_ = std::move(center);
  o.beta_ = beta;
  o.c_ = c;
  return o;
}

std::string Observable::profile_name() const {
  return profile_ == Profile::neg_log ? "neg-log" : "power";
}

double Observable::value(double x) const {
  double d = circle_distance(x, center_d_);
  if (profile_ == Profile::neg_log)
    return d == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(d);
  return c_ - std::pow(d, beta_);
}

double Observable::sup() const {
  return profile_ == Profile::neg_log ? std::numeric_limits<double>::infinity() : c_;
}

double Observable::radius_for(double u) const {
  if (!(u < sup())) throw PreconditionError("threshold must lie below sup φ");
  if (profile_ == Profile::neg_log) return std::exp(-u);
  return std::pow(c_ - u, 1.0 / beta_);
}

double Observable::level_for_radius(double r) const {
  if (!(r > 0.0)) throw PreconditionError("radius must be positive");
  if (profile_ == Profile::neg_log) return -std::log(r);
  return c_ - std::pow(r, beta_);
}

} // namespace extremal
