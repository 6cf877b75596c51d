#include "extremal/sweep.hpp"

#include "extremal/bounds.hpp"
#include "extremal/errors.hpp"
#include "extremal/events.hpp"

#include <cmath>

namespace extremal {

std::uint64_t row_seed(std::uint64_t seed, std::size_t row) { return seed + row; }

SweepResult convergence_sweep(const FullBranchMap& map, const Observable& obs, const SweepConfig& config) {
  if (config.ns.empty()) throw PreconditionError("empty n grid");
  if (!(config.tau > 0)) throw PreconditionError("τ must be positive");
  SweepResult out;
  out.config = config.provenance;
  ThetaLimit limit = theta_limit(map, obs);
  out.theta = limit.theta.get_d();
  const std::size_t q = config.q ? *config.q : limit.q;
  const double tau = config.tau.get_d();

  for (std::size_t i = 0; i < config.ns.size(); ++i) {
    const std::size_t n = config.ns[i];
    if (n < 4) throw PreconditionError("n must be at least 4");
    SweepRow row;
    row.scale = n;
    row.q = q;
    row.seed = row_seed(config.run.seed, i);
    RunOptions run = config.run;
    run.seed = row.seed;
    ECDF e = estimate_evl(map, obs, n, config.tau, run);
    row.estimate = e.estimates[0];
    row.ci_half = e.half_widths[0];
    row.limit = std::exp(-out.theta * tau);
    row.deviation = std::abs(row.estimate - row.limit);

    auto u = exceedance_ball(obs, threshold_for(obs, n, config.tau).radius);
    auto a = annulus_set(map, u, q);
    row.pa = a.measure().get_d();
    auto ret = first_return_R(map, a, n);
    row.r = ret ? *ret : n;
    auto kt = optimize_kt_evl(n, row.pa, config.gamma);
    row.k = kt.k;
    row.t = kt.t;
    while (n / row.k < row.t + 1 && row.k > 1) --row.k;
    row.bracket = sharp_evl_bracket(tau, n, out.theta, row.pa, row.k, row.t, row.r, config.gamma).total;
    row.ratio = row.bracket > 0.0 ? row.deviation / row.bracket : 0.0;
    out.rows.push_back(row);
  }
  return out;
}

Table to_table(const SweepResult& result) {
  Table t;
  t.columns = {"scale", "estimate", "ci_half", "limit", "deviation", "bracket", "ratio", "seed",
               "q", "k", "t", "R", "PA"};
  t.config = result.config;
  t.config["theta"] = result.theta;
  for (const auto& r : result.rows)
    t.add_row({r.scale, r.estimate, r.ci_half, r.limit, r.deviation, r.bracket, r.ratio, r.seed, r.q,
               r.k, r.t, r.r, r.pa});
  return t;
}

} // namespace extremal
