#include "extremal/cli.hpp"

#include "extremal/bounds.hpp"
#include "extremal/decay.hpp"
#include "extremal/errors.hpp"
#include "extremal/escape.hpp"
#include "extremal/monte_carlo.hpp"
#include "extremal/observable.hpp"
#include "extremal/parallel.hpp"
#include "extremal/serialization.hpp"
#include "extremal/sweep.hpp"
#include "extremal/thermodynamics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>

namespace extremal::cli {

using nlohmann::json;

std::size_t quartic_root_ceil(std::size_t n) {
  std::size_t k = 0;
  auto fourth = [](std::size_t x) { return static_cast<unsigned __int128>(x) * x * x * x; };
  while (fourth(k) < n) ++k;
  return k;
}

CheckResult run_check(const FullBranchMap& map, const CheckOptions& opts) {
  CheckResult result;
  Table& table = result.table;
  table.columns = {"kind", "n", "k", "q", "zeta", "eps", "lhs", "rhs", "lhs_value", "rhs_value", "holds"};

  if (!opts.ns.empty()) {
    const Observable obs = Observable::neg_log(opts.zeta);
    std::optional<Rational> previous;
    for (std::size_t n : opts.ns) {
      const std::size_t k = quartic_root_ceil(n);
      Rational sum = dprime_sum(map, obs, n, opts.q, k, Rational(1), opts.range);
      bool holds = !previous || sum < *previous;
      if (opts.inject_fault && previous) holds = false;
      result.violated = result.violated || !holds;
      table.add_row({"dprime", n, k, opts.q, to_string(opts.zeta), nullptr, to_string(sum), nullptr,
                     sum.get_d(), nullptr, holds});
      previous = sum;
    }
  }

  Rng rng = task_rng(opts.seed, 0);
  for (std::size_t i = 0; i < opts.configs; ++i) {
    std::uniform_int_distribution<long> den_dist(2, 64);
    long den = den_dist(rng);
    long num = std::uniform_int_distribution<long>(0, den - 1)(rng);
    Rational zeta(num, den);
    zeta.canonicalize();
    Rational eps(std::uniform_int_distribution<long>(1, 32)(rng), 512);
    eps.canonicalize();
    std::size_t q = std::uniform_int_distribution<std::size_t>(0, opts.max_q)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(q + 1, std::max(q + 1, opts.max_n))(rng);

    auto b = ball(zeta, eps);
    auto a = annulus_set(map, b, q);
    Rational lhs = annuli_gap_lhs(map, b, q, n);
    Rational rhs = annuli_gap_bound(map, b, a, q, n);
    if (opts.inject_fault && i == 0) rhs = lhs - Rational(1, 1000000);
    bool holds = lhs <= rhs;
    result.violated = result.violated || !holds;
    table.add_row({"domination", n, nullptr, q, to_string(zeta), to_string(eps), to_string(lhs),
                   to_string(rhs), lhs.get_d(), rhs.get_d(), holds});
  }
  return result;
}

namespace {

struct Common {
  std::string map = "doubling";
  std::string zeta;
  std::string observable = "neg-log";
  double beta = 1.0;
  double c = 0.0;
  std::string out_dir = ".";
  std::string prefix;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  std::string trials = "1e5";
  std::string decay = "map";
  double decay_c0 = 4.0;
  double decay_lambda = 0.0;
  double decay_delta = 1.0;
  std::string decay_table;
  std::string arithmetic = "exact";
  bool quiet = false;
};

struct Params {
  std::string tau = "1";
  std::string taus = "0.5,1,2";
  std::string ns;
  std::string eps;
  std::optional<std::size_t> q;
  std::size_t bins = kDefaultUlamBins;
  std::optional<double> theta_hat;
  std::string bracket = "evl,evl-limit,sharp-evl";
  std::string dprime_range = "beyond-q";
  std::string potential = "geometric";
  std::size_t n_max = 10;
  std::size_t exact_max_t = 12;
  std::size_t configs = 50;
  bool inject_fault = false;
};

DecayModel make_decay(const Common& c, const FullBranchMap& map) {
  if (c.decay == "map") {
    if (c.decay_lambda > 0.0) return DecayModel::exponential(c.decay_c0, c.decay_lambda, c.decay_delta);
    return DecayModel::exponential(c.decay_c0, map.max_width().get_d(), c.decay_delta);
  }
  if (c.decay == "exponential") {
    double lambda = c.decay_lambda > 0.0 ? c.decay_lambda : map.max_width().get_d();
    return DecayModel::exponential(c.decay_c0, lambda, c.decay_delta);
  }
  if (c.decay == "zero") return DecayModel::zero(c.decay_delta);
  if (c.decay == "tabulated") {
    if (c.decay_table.empty()) throw PreconditionError("--decay tabulated needs --decay-table");
    return DecayModel::tabulated(parse_double_list(c.decay_table), c.decay_delta);
  }
  throw PreconditionError("unknown decay model '" + c.decay + "'");
}

Rational require_zeta(const Common& c) {
  if (c.zeta.empty()) throw PreconditionError("--zeta is required");
  Rational z = parse_rational(c.zeta);
  if (z < 0 || z >= 1) throw PreconditionError("--zeta must lie in [0,1)");
  return z;
}

Observable make_observable(const Common& c) {
  Rational z = require_zeta(c);
  if (c.observable == "neg-log") return Observable::neg_log(z);
  if (c.observable == "power") return Observable::power(z, c.beta, c.c);
  throw PreconditionError("unknown observable '" + c.observable + "'");
}

RunOptions make_run(const Common& c) {
  RunOptions run;
  run.trials = parse_count(c.trials);
  run.seed = c.seed;
  run.workers = c.workers;
  return run;
}

DprimeRange parse_range(const std::string& s) {
  if (s == "beyond-q") return DprimeRange::beyond_q;
  if (s == "from-one") return DprimeRange::from_one;
  throw PreconditionError("unknown --dprime-range '" + s + "'");
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

json resolved_config(const CLI::App& app, const CLI::App& sub) {
  json j = json::object();
  j["command"] = sub.get_name();
  j["schema_version"] = kSchemaVersion;
  auto record = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "config") continue;
      if (opt->count() > 0) {
        auto res = opt->results();
        if (opt->get_type_size() == 0)
          j[name] = true;
        else
          j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else {
        j[name] = opt->get_default_str();
      }
    }
  };
  record(app);
  record(sub);
  return j;
}

void emit(const Table& table, const json& extra, const Common& c, const std::string& command,
          std::ostream& out) {
  std::filesystem::path dir = c.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out_dir);
  std::filesystem::create_directories(dir);
  std::string prefix = c.prefix.empty() ? command : c.prefix;
  {
    std::ofstream f(dir / (prefix + ".csv"));
    if (!f) throw PreconditionError("cannot write " + (dir / (prefix + ".csv")).string());
    write_csv(f, table);
  }
  {
    json j = to_json(table);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::ofstream f(dir / (prefix + ".json"));
    if (!f) throw PreconditionError("cannot write " + (dir / (prefix + ".json")).string());
    f << j.dump(2) << '\n';
  }
  if (!c.quiet) write_csv(out, table);
}

int cmd_evl(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  auto obs = make_observable(c);
  SweepConfig sc;
  sc.tau = parse_rational(p.tau);
  if (!(sc.tau > 0)) throw PreconditionError("--tau must be positive");
  if (p.ns.empty()) throw PreconditionError("--n is required");
  sc.ns = parse_count_list(p.ns);
  sc.run = make_run(c);
  sc.gamma = make_decay(c, map);
  sc.q = p.q;
  sc.provenance = std::move(config);
  auto result = convergence_sweep(map, obs, sc);
  emit(to_table(result), json::object(), c, "evl", out);
  return kSuccess;
}

double limit_theta_or_nan(const FullBranchMap& map, const Rational& zeta) {
  try {
    return theta_limit(map, Observable::neg_log(zeta)).theta.get_d();
  } catch (const PreconditionError&) {
    return std::nan("");
  }
}

int cmd_hts(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  Rational zeta = require_zeta(c);
  if (p.eps.empty()) throw PreconditionError("--eps is required");
  auto eps_grid = parse_rational_list(p.eps);
  auto taus = parse_double_list(p.taus);
  RunOptions run = make_run(c);
  double theta = limit_theta_or_nan(map, zeta);

  Table table;
  table.columns = {"scale", "tau", "t", "estimate", "ci_half", "limit", "deviation", "exact", "censored", "seed"};
  table.config = std::move(config);
  table.config["theta"] = std::isnan(theta) ? json(nullptr) : json(theta);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const Rational& eps = eps_grid[i];
    RunOptions r = run;
    r.seed = row_seed(run.seed, i);
    ECDF e = estimate_hts(map, zeta, eps, taus, r);
    const double pb = 2.0 * eps.get_d();
    for (std::size_t j = 0; j < taus.size(); ++j) {
      auto t = static_cast<std::size_t>(std::floor(taus[j] / pb));
      json exact = nullptr;
      if (t <= p.exact_max_t) exact = exact_hts_prob(map, ball(zeta, eps), t).get_d();
      json limit = nullptr, deviation = nullptr;
      if (!std::isnan(theta)) {
        limit = std::exp(-theta * taus[j]);
        deviation = std::abs(e.estimates[j] - std::exp(-theta * taus[j]));
      }
      table.add_row({to_string(eps), taus[j], t, e.estimates[j], e.half_widths[j], limit, deviation, exact,
                     e.censored, r.seed});
    }
  }
  emit(table, json::object(), c, "hts", out);
  return kSuccess;
}

int cmd_escape(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  Rational zeta = require_zeta(c);
  if (p.eps.empty()) throw PreconditionError("--eps is required");
  auto eps_grid = parse_rational_list(p.eps);
  RunOptions run = make_run(c);
  auto gamma = make_decay(c, map);
  std::optional<ThetaLimit> limit;
  try {
    limit = theta_limit(map, Observable::neg_log(zeta));
  } catch (const PreconditionError&) {
  }

  Table table;
  table.columns = {"scale", "pb", "slope", "rate_over_pb", "oracle", "lower", "nominal", "degenerate",
                   "k", "t", "ell", "R", "upsilon", "L", "fit_begin", "fit_end", "residual", "seed"};
  table.config = std::move(config);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const Rational& eps = eps_grid[i];
    RunOptions r = run;
    r.seed = row_seed(run.seed, i);
    if (eps == 0) {
      table.add_row({"0", 0.0, 0.0, nullptr, 0.0, 0.0, 0.0, false, nullptr, nullptr, nullptr, nullptr,
                     nullptr, nullptr, nullptr, nullptr, nullptr, r.seed});
      continue;
    }
    auto fit = estimate_escape_rate(map, zeta, eps, r, p.theta_hat);
    auto hole = ball(zeta, eps);
    json oracle = nullptr;
    try {
      oracle = ulam_escape_oracle(map, hole, p.bins);
    } catch (const PreconditionError&) {
      // hole not aligned to the bins
    }
    json lower = nullptr, nominal = nullptr, degenerate = nullptr, k = nullptr, t = nullptr,
         ell = nullptr, R = nullptr, ups = nullptr, L = nullptr;
    if (limit) {
      std::size_t q = p.q ? *p.q : limit->q;
      auto w = escape_window_inputs(map, zeta, eps, q, limit->theta.get_d(), gamma);
      lower = w.window.lower;
      nominal = w.window.nominal;
      degenerate = w.window.degenerate;
      k = w.k;
      t = w.t;
      ell = w.ell;
      R = w.r;
      ups = w.upsilon;
      L = w.l;
    }
    table.add_row({to_string(eps), fit.pb, fit.slope, fit.slope / fit.pb, oracle, lower, nominal, degenerate,
                   k, t, ell, R, ups, L, fit.window_begin, fit.window_end, fit.residual, r.seed});
  }
  emit(table, json::object(), c, "escape", out);
  return kSuccess;
}

int cmd_ei(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  auto obs = make_observable(c);
  if (c.arithmetic != "exact" && c.arithmetic != "float")
    throw PreconditionError("--arithmetic must be exact or float");
  const bool exact = c.arithmetic == "exact";
  ThetaLimit limit;
  bool certified = true;
  try {
    limit = theta_limit(map, obs);
  } catch (const PreconditionError&) {
    certified = false;
  }
  if (!p.q && !certified) throw PreconditionError("ζ is not certified periodic or non-recurrent; pass --q");
  const std::size_t q = p.q ? *p.q : limit.q;

  Table table;
  table.columns = {"scale", "radius", "q", "theta_n", "theta_n_value", "limit_q", "limit_theta"};
  table.config = std::move(config);
  auto add = [&](const std::string& scale, const Rational& radius) {
    auto u = exceedance_ball(obs, radius);
    Rational th = theta_n(map, u, q);
    table.add_row({scale, to_string(radius), q, exact ? json(to_string(th)) : json(nullptr), th.get_d(),
                   certified ? json(limit.q) : json(nullptr),
                   certified ? json(to_string(limit.theta)) : json(nullptr)});
  };
  if (!p.eps.empty()) {
    for (const auto& eps : parse_rational_list(p.eps)) add(to_string(eps), eps);
  } else if (!p.ns.empty()) {
    Rational tau = parse_rational(p.tau);
    for (std::size_t n : parse_count_list(p.ns)) add(std::to_string(n), threshold_for(obs, n, tau).radius);
  } else {
    throw PreconditionError("ei needs --eps or --n");
  }
  emit(table, json::object(), c, "ei", out);
  return kSuccess;
}

int cmd_bounds(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  auto obs = make_observable(c);
  auto gamma = make_decay(c, map);
  ThetaLimit limit = theta_limit(map, obs);
  const std::size_t q = p.q ? *p.q : limit.q;
  const double theta = limit.theta.get_d();
  const Rational tau_r = parse_rational(p.tau);
  if (!(tau_r > 0)) throw PreconditionError("--tau must be positive");
  const double tau = tau_r.get_d();
  const auto range = parse_range(p.dprime_range);
  auto brackets = split_names(p.bracket);

  Table table;
  table.columns = {"scale", "bracket", "term", "value", "k", "t"};
  table.config = std::move(config);
  table.config["theta"] = theta;
  json budgets = json::array();
  auto record = [&](const std::string& scale, const ErrorBudget& b, std::size_t k, std::size_t t) {
    for (const auto& term : b.terms) table.add_row({scale, b.bracket, term.name, term.value, k, t});
    table.add_row({scale, b.bracket, "total", b.total, k, t});
    json j = to_json(b);
    j["scale"] = scale;
    j["k"] = k;
    j["t"] = t;
    budgets.push_back(j);
  };

  bool want_evl = false;
  for (const auto& name : brackets) {
    if (name == "evl" || name == "evl-limit" || name == "sharp-evl") want_evl = true;
    else if (name != "sharp-hts") throw PreconditionError("unknown bracket '" + name + "'");
  }
  if (want_evl) {
    if (p.ns.empty()) throw PreconditionError("EVL brackets need --n");
    for (std::size_t n : parse_count_list(p.ns)) {
      if (n < 4) throw PreconditionError("n must be at least 4");
      auto schedule = threshold_for(obs, n, tau_r);
      auto u = exceedance_ball(obs, schedule.radius);
      auto a = annulus_set(map, u, q);
      BracketInputs in;
      in.tau = tau;
      in.n = n;
      in.q = q;
      in.pu = u.measure().get_d();
      in.pa = a.measure().get_d();
      auto kt = optimize_kt_evl(n, in.pa, gamma);
      in.k = kt.k;
      in.t = kt.t;
      while (n / in.k < in.t + 1 && in.k > 1) --in.k;
      in.gamma_mix = gamma(in.t);
      in.dprime = dprime_sum(map, a, n, q, in.k, range).get_d();
      const std::string scale = std::to_string(n);
      for (const auto& name : brackets) {
        if (name == "evl") record(scale, evl_bracket(in), in.k, in.t);
        if (name == "evl-limit") record(scale, evl_limit_bracket(in, theta), in.k, in.t);
        if (name == "sharp-evl") {
          auto ret = first_return_R(map, a, n);
          std::size_t r = ret ? *ret : n;
          record(scale, sharp_evl_bracket(tau, n, theta, in.pa, in.k, in.t, r, gamma), in.k, in.t);
        }
      }
    }
  }
  for (const auto& name : brackets) {
    if (name != "sharp-hts") continue;
    if (p.eps.empty()) throw PreconditionError("the HTS bracket needs --eps");
    for (const auto& eps : parse_rational_list(p.eps)) {
      auto b = ball(obs.center(), eps);
      auto a = annulus_set(map, b, q);
      const double pb = b.measure().get_d(), pa = a.measure().get_d();
      auto kt = optimize_kt_hts(pb, gamma);
      long ell = hts_ell(pb, kt.k, kt.t);
      std::size_t ell_u = ell > 0 ? static_cast<std::size_t>(ell) : 0;
      auto ret = first_return_R(map, a, kDefaultCertificationHorizon);
      std::size_t r = ret ? *ret : kDefaultCertificationHorizon;
      record(to_string(eps),
             sharp_hts_bracket(tau, pb, pa, theta, kt.k, kt.t, r, ell_u, bv_norm_indicator(a), gamma), kt.k,
             kt.t);
    }
  }
  emit(table, json{{"budgets", budgets}}, c, "bounds", out);
  return kSuccess;
}

int cmd_check(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  CheckOptions opts;
  opts.zeta = c.zeta.empty() ? Rational(1, 3) : require_zeta(c);
  opts.q = p.q ? *p.q : 2;
  if (!p.ns.empty()) opts.ns = parse_count_list(p.ns);
  opts.range = parse_range(p.dprime_range);
  opts.configs = p.configs;
  opts.seed = c.seed;
#ifdef EXTREMAL_FAULT_INJECTION
  opts.inject_fault = p.inject_fault;
#endif
  auto result = run_check(map, opts);
  result.table.config = std::move(config);
  emit(result.table, json{{"violated", result.violated}}, c, "check", out);
  return result.violated ? kViolation : kSuccess;
}

int cmd_pressure(const Common& c, const Params& p, json config, std::ostream& out) {
  auto map = parse_map_spec(c.map);
  auto potential = Potential::parse(p.potential);
  Table table;
  table.columns = {"n", "Z_n", "pressure", "Z_n_exact"};
  table.config = std::move(config);
  auto rows = pressure(map, potential, p.n_max);
  const bool exact = potential.kind() == Potential::Kind::geometric && map.is_affine();
  for (const auto& r : rows) {
    json z_exact = exact ? json(to_string(geometric_partition_sum(map, r.n))) : json(nullptr);
    table.add_row({r.n, r.z, r.pressure, z_exact});
  }
  emit(table, json::object(), c, "pressure", out);
  return kSuccess;
}

void add_common(CLI::App* sub, Common& c, bool stochastic) {
  sub->add_option("--map", c.map, "doubling, tripling, widths:a,b,..., inline JSON or a .json file");
  sub->add_option("--zeta", c.zeta, "Center point; fractions like 1/3 stay exact");
  sub->add_option("--observable", c.observable, "neg-log or power");
  sub->add_option("--beta", c.beta, "Exponent of the power observable");
  sub->add_option("--c", c.c, "Constant of the power observable");
  sub->add_option("--out-dir", c.out_dir, "Output directory")->envname("EXTREMAL_OUTPUT_DIR");
  sub->add_option("--prefix", c.prefix, "Output file stem (default: command name)");
  sub->add_option("--decay", c.decay, "map, exponential, tabulated or zero");
  sub->add_option("--decay-c0", c.decay_c0, "C0 of the exponential decay");
  sub->add_option("--decay-lambda", c.decay_lambda, "λ of the exponential decay (0: largest branch width)");
  sub->add_option("--decay-delta", c.decay_delta, "Summability exponent δ");
  sub->add_option("--decay-table", c.decay_table, "γ(0),γ(1),... for --decay tabulated");
  sub->add_option("--arithmetic", c.arithmetic, "exact or float");
  sub->add_flag("--quiet", c.quiet, "Do not echo the table");
  if (stochastic) {
    sub->add_option("--seed", c.seed, "Master seed")->required();
    sub->add_option("--trials", c.trials, "Trials per grid point (scientific notation allowed)");
    sub->add_option("--workers", c.workers, "Worker threads (0: all cores)");
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme value laws and hitting times for full-branch interval maps", "extremal"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  Params p;
  auto* evl = app.add_subcommand("evl", "EVL convergence sweep over n");
  add_common(evl, c, true);
  evl->add_option("--tau", p.tau, "τ");
  evl->add_option("--n", p.ns, "n grid, comma separated")->required();
  evl->add_option("--q", p.q, "Override the cluster length q");

  auto* hts = app.add_subcommand("hts", "Hitting-time survival per ε over a τ grid");
  add_common(hts, c, true);
  hts->add_option("--eps", p.eps, "ε grid")->required();
  hts->add_option("--tau", p.taus, "τ grid");
  hts->add_option("--exact-max-t", p.exact_max_t, "Exact oracle column up to this t");

  auto* esc = app.add_subcommand("escape", "Escape rates per ε with the spectral oracle");
  add_common(esc, c, true);
  esc->add_option("--eps", p.eps, "ε grid")->required();
  esc->add_option("--bins", p.bins, "Ulam bins");
  esc->add_option("--theta-hat", p.theta_hat, "θ used to place the fit window");
  esc->add_option("--q", p.q, "Override the cluster length q");

  auto* ei = app.add_subcommand("ei", "Finite-n extremal index θ_n");
  add_common(ei, c, false);
  ei->add_option("--eps", p.eps, "Ball radius grid");
  ei->add_option("--n", p.ns, "n grid (radius τ/(2n))");
  ei->add_option("--tau", p.tau, "τ for the n grid");
  ei->add_option("--q", p.q, "Override the cluster length q");

  auto* bnd = app.add_subcommand("bounds", "Error budgets with optimized (k,t)");
  add_common(bnd, c, false);
  bnd->add_option("--n", p.ns, "n grid");
  bnd->add_option("--eps", p.eps, "ε grid for sharp-hts");
  bnd->add_option("--tau", p.tau, "τ");
  bnd->add_option("--q", p.q, "Override the cluster length q");
  bnd->add_option("--bracket", p.bracket, "evl, evl-limit, sharp-evl, sharp-hts");
  bnd->add_option("--dprime-range", p.dprime_range, "beyond-q or from-one");

  auto* chk = app.add_subcommand("check", "Exact Д'_q sums and annuli domination");
  add_common(chk, c, true);
  chk->add_option("--n", p.ns, "n grid for the Д'_q sums");
  chk->add_option("--q", p.q, "q (default 2)");
  chk->add_option("--configs", p.configs, "Random domination instances");
  chk->add_option("--dprime-range", p.dprime_range, "beyond-q or from-one");
#ifdef EXTREMAL_FAULT_INJECTION
  chk->add_flag("--inject-fault", p.inject_fault, "Corrupt one bound to exercise exit code 1");
#endif

  auto* prs = app.add_subcommand("pressure", "Partition sums and pressure");
  add_common(prs, c, false);
  prs->add_option("--potential", p.potential, "geometric, zero, constant:c or branch:v0,v1,...");
  prs->add_option("--n-max", p.n_max, "Largest period");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  json config = resolved_config(app, *sub);
  try {
    if (sub == evl) return cmd_evl(c, p, config, out);
    if (sub == hts) return cmd_hts(c, p, config, out);
    if (sub == esc) return cmd_escape(c, p, config, out);
    if (sub == ei) return cmd_ei(c, p, config, out);
    if (sub == bnd) return cmd_bounds(c, p, config, out);
    if (sub == chk) return cmd_check(c, p, config, out);
    if (sub == prs) return cmd_pressure(c, p, config, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return dispatch(argc, argv, out, err);
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  std::vector<const char*> ptrs;
  for (const auto& a : argv) ptrs.push_back(a.c_str());
  return dispatch(static_cast<int>(ptrs.size()), ptrs.data(), out, err);
}

} // namespace extremal::cli
