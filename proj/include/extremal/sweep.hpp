#ifndef EXTREMAL_SWEEP_HPP
#define EXTREMAL_SWEEP_HPP

#include "extremal/decay.hpp"
#include "extremal/full_branch_map.hpp"
#include "extremal/monte_carlo.hpp"
#include "extremal/observable.hpp"
#include "extremal/rational.hpp"
#include "extremal/table.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace extremal {

struct SweepConfig {
  Rational tau = 1;
  std::vector<std::size_t> ns;
  RunOptions run;
  DecayModel gamma;
  /// Overrides the period found by theta_limit.
  std::optional<std::size_t> q;
  /// Resolved config recorded in the output.
  nlohmann::json provenance = nlohmann::json::object();
};

struct SweepRow {
  std::size_t scale = 0;
  double estimate = 0.0;
  double ci_half = 0.0;
  double limit = 0.0;  // e^{−θτ}
  double deviation = 0.0;
  double bracket = 0.0;  // total of the sharp EVL bracket
  double ratio = 0.0;    // deviation / bracket
  std::uint64_t seed = 0;
  std::size_t q = 0;
  std::size_t k = 0;
  std::size_t t = 0;
  std::size_t r = 0;
  double pa = 0.0;
};

struct SweepResult {
  double theta = 1.0;
  std::vector<SweepRow> rows;
  nlohmann::json config;
};

/// Seed of row i.
std::uint64_t row_seed(std::uint64_t seed, std::size_t row);

/// EVL convergence along config.ns: Monte-Carlo estimate against e^{−θτ},
/// with the sharp EVL bracket at optimizer-chosen (k,t).
SweepResult convergence_sweep(const FullBranchMap& map, const Observable& obs, const SweepConfig& config);

Table to_table(const SweepResult& result);

} // namespace extremal

#endif
