#include "extremal/escape.hpp"

#include "extremal/bounds.hpp"
#include "extremal/errors.hpp"
#include "extremal/events.hpp"
#include "extremal/observable.hpp"
#include "extremal/ulam.hpp"

#include <cmath>
#include <limits>

namespace extremal {

namespace {

double default_theta(const FullBranchMap& map, const Rational& zeta) {
  try {
    return theta_limit(map, Observable::neg_log(zeta)).theta.get_d();
  } catch (const PreconditionError&) {
    return 1.0;
  }
}

} // namespace

EscapeFit estimate_escape_rate(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                               const RunOptions& run, std::optional<double> theta_hat) {
  EscapeFit fit;
  fit.trials = run.trials;
  fit.seed = run.seed;
  if (eps == 0) return fit;
  if (eps < 0 || eps >= Rational(1, 4)) throw PreconditionError("ε must lie in [0,1/4)");
  fit.pb = 2.0 * eps.get_d();
  fit.theta_hat = theta_hat ? *theta_hat : default_theta(map, zeta);
  if (!(fit.theta_hat > 0.0)) throw PreconditionError("θ̂ must be positive");

  const std::size_t horizon = hts_horizon(fit.pb);
  auto counts = survival_counts(map, zeta, eps, horizon, run);
  for (std::size_t t = 0; t <= horizon && counts.alive[t] > 0; ++t) {
    fit.t.push_back(static_cast<double>(t));
    fit.log_survival.push_back(std::log(static_cast<double>(counts.alive[t]) /
                                        static_cast<double>(counts.trials)));
  }

  fit.window_begin = static_cast<std::size_t>(std::ceil(5.0 / (fit.theta_hat * fit.pb)));
  std::size_t end = 0;
  bool found = false;
  for (std::size_t t = 0; t <= horizon; ++t)
    if (counts.alive[t] >= kMinWindowSurvivors) {
      end = t;
      found = true;
    }
  if (!found || end < fit.window_begin + 1)
    throw PreconditionError("too few surviving trials for a fit window; increase trials");
  fit.window_end = end;

  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t t = fit.window_begin; t <= end; ++t) {
    double x = fit.t[t], y = -fit.log_survival[t];
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double rss = 0;
  for (std::size_t t = fit.window_begin; t <= end; ++t) {
    double r = -fit.log_survival[t] - (intercept + slope * fit.t[t]);
    rss += r * r;
  }
  fit.slope = std::max(0.0, slope);
  fit.residual = std::sqrt(rss);
  return fit;
}

double ulam_escape_oracle(const FullBranchMap& map, const IntervalUnion<Rational>& hole, std::size_t bins) {
  if (bins < 64) throw PreconditionError("need at least 64 bins");
  if (hole.empty()) return 0.0;
  if (hole.is_full()) return std::numeric_limits<double>::infinity();
  std::vector<bool> keep(bins, true);
  const Rational nb(static_cast<long>(bins));
  for (const auto& c : hole.components()) {
    Rational a = c.lo * nb, b = c.hi * nb;
    if (a.get_den() != 1 || b.get_den() != 1)
      throw PreconditionError("hole is not aligned to the bins");
    for (auto i = a.get_num().get_ui(); i < b.get_num().get_ui(); ++i) keep[i] = false;
  }
  bool any = false;
  for (bool k : keep) any = any || k;
  if (!any) return std::numeric_limits<double>::infinity();
  auto spectral = restricted_spectral_radius(ulam_matrix(map, bins), keep);
  if (!spectral.converged) throw NumericalError("power iteration did not converge; degenerate hole?");
  if (spectral.radius <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(spectral.radius);
}

EscapeWindowInputs escape_window_inputs(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                                        std::size_t q, double theta, const DecayModel& gamma) {
  EscapeWindowInputs w;
  auto b = ball(zeta, eps);
  auto a = annulus_set(map, b, q);
  const double pb = b.measure().get_d();
  w.pa = a.measure().get_d();
  w.m = bv_norm_indicator(a);
  auto kt = optimize_kt_hts(pb, gamma);
  w.k = kt.k;
  w.t = kt.t;
  long ell = hts_ell(pb, w.k, w.t);
  w.ell = ell > 0 ? static_cast<std::size_t>(ell) : 0;
  auto ret = first_return_R(map, a, kDefaultCertificationHorizon);
  w.r = ret ? *ret : kDefaultCertificationHorizon;
  w.upsilon = upsilon(w.pa, w.m, w.ell, w.t, w.r, gamma);
  w.l = 1.0 - static_cast<double>(w.ell) * w.pa;
  w.window = escape_rate_window(theta, w.k, w.upsilon, w.l, pb);
  return w;
}

} // namespace extremal
