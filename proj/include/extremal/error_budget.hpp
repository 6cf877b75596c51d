#ifndef EXTREMAL_ERROR_BUDGET_HPP
#define EXTREMAL_ERROR_BUDGET_HPP

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace extremal {

struct ErrorTerm {
  std::string name;
  double value = 0.0;
};

/// Term-by-term breakdown of an error bracket. The non-constructive
/// constant C is not part of any value here.
struct ErrorBudget {
  std::string bracket;
  std::vector<ErrorTerm> terms;
  double total = 0.0;
  /// Exponent θ − kΥ/L of the HTS bracket.
  std::optional<double> exponent_shift;
  /// The bracket gives no decay (shift ≥ θ).
  bool vacuous = false;
  std::string constant_policy = "constant C excluded";
  /// Intermediate quantities (Γ, α, Υ, L, ...).
  std::vector<std::pair<std::string, double>> diagnostics;

  void add(std::string name, double value);
  double term(const std::string& name) const;
  std::optional<double> diagnostic(const std::string& name) const;
};

nlohmann::json to_json(const ErrorBudget& budget);

/// Header for `write_budget_csv`.
void write_budget_csv_header(std::ostream& out);
/// One row per term: scale,bracket,term,value.
void write_budget_csv(std::ostream& out, const std::string& scale, const ErrorBudget& budget);

} // namespace extremal

#endif
