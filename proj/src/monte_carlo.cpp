#include "extremal/monte_carlo.hpp"

#include "extremal/errors.hpp"
#include "extremal/events.hpp"
#include "extremal/parallel.hpp"
#include "extremal/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace extremal {

namespace {

// x·2^64 rounded down, reduced mod 2^64.
std::uint64_t to_fixed(const Rational& x) {
  mpz_class scaled = x.get_num();
  scaled <<= 64;
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  mpz_class mask = 1;
  mask <<= 64;
  mask -= 1;
  scaled &= mask;
  return static_cast<std::uint64_t>(mpz_get_ui(scaled.get_mpz_t()));
}

struct DoublingWalker {
  using Dist = std::uint64_t;
  Rng* rng;
  std::uint64_t z;
  std::uint64_t y = 0;
  std::uint64_t bits = 0;
  unsigned left = 0;

  void start() {
    y = (*rng)();
    left = 0;
  }
  Dist dist() const {
    std::uint64_t a = y - z, b = z - y;
    return a < b ? a : b;
  }
  void step() {
    if (left == 0) {
      bits = (*rng)();
      left = 64;
    }
    y = (y >> 1) | (bits << 63);
    bits >>= 1;
    --left;
  }
};

struct AffineTable {
  std::vector<double> lo, hi, width;
  std::vector<char> increasing;
  explicit AffineTable(const FullBranchMap& map) {
    for (const auto& b : map.branches()) {
      lo.push_back(b.lo_d);
      hi.push_back(b.hi_d);
      width.push_back(b.width_d);
      increasing.push_back(b.increasing ? 1 : 0);
    }
  }
};

struct AffineWalker {
  using Dist = double;
  Rng* rng;
  const DigitSampler* sampler;
  const AffineTable* table;
  double z;
  double y = 0.0;

  void start() { y = static_cast<double>((*rng)() >> 11) * 0x1.0p-53; }
  Dist dist() const { return circle_distance(y, z); }
  void step() {
    std::size_t d = (*sampler)(*rng);
    y = table->increasing[d] ? table->lo[d] + table->width[d] * y : table->hi[d] - table->width[d] * y;
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
  }
};

// Walks `horizon` points; returns the first index with dist < stop (or
// horizon) and the smallest distance seen up to there.
template <class Walker>
std::pair<std::size_t, typename Walker::Dist> walk(Walker& w, std::size_t horizon,
                                                  typename Walker::Dist stop) {
  auto best = std::numeric_limits<typename Walker::Dist>::max();
  w.start();
  for (std::size_t m = 0; m < horizon; ++m) {
    auto d = w.dist();
    if (d < best) best = d;
    if (d < stop) return {m, best};
    w.step();
  }
  return {horizon, best};
}

std::size_t chunk_count(std::uint64_t trials) {
  return static_cast<std::size_t>((trials + kChunkSize - 1) / kChunkSize);
}

std::uint64_t chunk_trials(std::uint64_t trials, std::size_t chunk) {
  std::uint64_t start = static_cast<std::uint64_t>(chunk) * kChunkSize;
  return std::min<std::uint64_t>(kChunkSize, trials - start);
}

void add_counts(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

void check_map(const FullBranchMap& map, const RunOptions& run) {
  map.require_affine("Monte Carlo sampling");
  if (run.trials == 0) throw PreconditionError("trials must be positive");
}

// Calls per_trial(walker, acc) for every trial, with the fastest walker for
// the map.
template <class Acc, class PerTrial>
Acc run_trials(const FullBranchMap& map, const Rational& zeta, const RunOptions& run, const Acc& init,
               PerTrial&& per_trial) {
  auto merge = [](Acc& into, const Acc& from) { add_counts(into, from); };
  if (map.is_doubling()) {
    const std::uint64_t z = to_fixed(zeta);
    return parallel_reduce(chunk_count(run.trials), run.workers, init,
                           [&](std::size_t chunk, Acc& acc) {
                             Rng rng = task_rng(run.seed, chunk);
                             DoublingWalker w{&rng, z};
                             for (std::uint64_t i = 0, m = chunk_trials(run.trials, chunk); i < m; ++i)
                               per_trial(w, acc);
                           },
                           merge);
  }
  const DigitSampler sampler(map);
  const AffineTable table(map);
  const double z = zeta.get_d();
  return parallel_reduce(chunk_count(run.trials), run.workers, init,
                         [&](std::size_t chunk, Acc& acc) {
                           Rng rng = task_rng(run.seed, chunk);
                           AffineWalker w{&rng, &sampler, &table, z};
                           for (std::uint64_t i = 0, m = chunk_trials(run.trials, chunk); i < m; ++i)
                             per_trial(w, acc);
                         },
                         merge);
}

// A Rational distance in the units of walker W.
template <class W>
typename W::Dist units(const Rational& r) {
  if constexpr (std::is_same_v<typename W::Dist, std::uint64_t>)
    return to_fixed(r);
  else
    return r.get_d();
}

void require_center(const Rational& zeta) {
  if (zeta < 0 || zeta >= 1) throw PreconditionError("center must lie in [0,1)");
}

} // namespace

ECDF estimate_evl(const FullBranchMap& map, const Observable& obs, std::size_t n, const Rational& tau,
                  const RunOptions& run) {
  return estimate_evl_multi(map, obs, n, {tau}, run);
}

ECDF estimate_evl_multi(const FullBranchMap& map, const Observable& obs, std::size_t n,
                        const std::vector<Rational>& taus, const RunOptions& run) {
  check_map(map, run);
  if (n == 0) throw PreconditionError("n must be positive");
  if (taus.empty()) throw PreconditionError("empty τ grid");
  require_center(obs.center());
  std::vector<Rational> radii;
  Rational smallest = 1;
  bool any = false;
  for (const auto& tau : taus) {
    if (tau < 0) throw PreconditionError("τ must be nonnegative");
    if (tau == 0) {
      radii.push_back(0);
      continue;
    }
    auto schedule = threshold_for(obs, n, tau);
    radii.push_back(schedule.radius);
    if (!any || schedule.radius < smallest) smallest = schedule.radius;
    any = true;
  }

  ECDF out;
  out.trials = run.trials;
  out.seed = run.seed;
  for (const auto& tau : taus) out.grid.push_back(tau.get_d());
  if (!any) {
    out.counts.assign(taus.size(), run.trials);
  } else {
    std::vector<std::uint64_t> init(taus.size(), 0);
    std::vector<std::uint64_t> r_fixed;
    std::vector<double> r_double;
    for (const auto& x : radii) {
      r_fixed.push_back(units<DoublingWalker>(x));
      r_double.push_back(units<AffineWalker>(x));
    }
    const auto stop_fixed = units<DoublingWalker>(smallest);
    const auto stop_double = units<AffineWalker>(smallest);
    out.counts = run_trials(map, obs.center(), run, init, [&](auto& w, std::vector<std::uint64_t>& acc) {
      using W = std::decay_t<decltype(w)>;
      const auto& r = [&]() -> const auto& {
        if constexpr (std::is_same_v<W, DoublingWalker>) return r_fixed; else return r_double;
      }();
      typename W::Dist stop;
      if constexpr (std::is_same_v<W, DoublingWalker>) stop = stop_fixed; else stop = stop_double;
      auto best = walk(w, n, stop).second;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (radii[i] == 0 || !(best < r[i])) ++acc[i];
    });
  }
  out.finalize();
  // τ = 0 is the degenerate threshold at the maximum: survival is 1.
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (taus[i] == 0) out.estimates[i] = 1.0;
  return out;
}

std::size_t hts_horizon(double pb) {
  if (!(pb > 0.0)) throw PreconditionError("hole measure must be positive");
  return static_cast<std::size_t>(std::ceil(50.0 / pb));
}

SurvivalCounts survival_counts(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                               std::size_t horizon, const RunOptions& run) {
  check_map(map, run);
  require_center(zeta);
  if (eps < 0 || eps >= Rational(1, 2)) throw PreconditionError("ε must lie in [0,1/2)");
  SurvivalCounts out;
  out.trials = run.trials;
  if (eps == 0) {
    out.alive.assign(horizon + 1, run.trials);
    out.censored = run.trials;
    return out;
  }
  std::vector<std::uint64_t> init(horizon + 1, 0);
  const auto stop_fixed = units<DoublingWalker>(eps);
  const auto stop_double = units<AffineWalker>(eps);
  auto hist = run_trials(map, zeta, run, init, [&](auto& w, std::vector<std::uint64_t>& acc) {
    using W = std::decay_t<decltype(w)>;
    typename W::Dist stop;
    if constexpr (std::is_same_v<W, DoublingWalker>) stop = stop_fixed; else stop = stop_double;
    ++acc[walk(w, horizon, stop).first];
  });
  out.censored = hist[horizon];
  out.alive.assign(horizon + 1, 0);
  std::uint64_t running = 0;
  for (std::size_t t = horizon + 1; t-- > 0;) {
    running += hist[t];
    out.alive[t] = running;
  }
  return out;
}

ECDF estimate_hts(const FullBranchMap& map, const Rational& zeta, const Rational& eps,
                  const std::vector<double>& taus, const RunOptions& run) {
  if (!(eps > 0) || eps >= Rational(1, 4)) throw PreconditionError("ε must lie in (0,1/4)");
  if (taus.empty()) throw PreconditionError("empty τ grid");
  const double pb = 2.0 * eps.get_d();
  std::vector<std::size_t> steps;
  std::size_t horizon = 0;
  for (double tau : taus) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw PreconditionError("τ must be finite and nonnegative");
    auto s = static_cast<std::size_t>(std::floor(tau / pb));
    steps.push_back(s);
    horizon = std::max(horizon, s);
  }
  auto counts = survival_counts(map, zeta, eps, horizon, run);
  ECDF out;
  out.grid = taus;
  out.trials = run.trials;
  out.seed = run.seed;
  out.censored = counts.censored;
  for (std::size_t s : steps) out.counts.push_back(counts.alive[s]);
  out.finalize();
  return out;
}

} // namespace extremal
