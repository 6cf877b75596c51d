#include "extremal/error_budget.hpp"

#include "extremal/errors.hpp"

#include <iomanip>

namespace extremal {

void ErrorBudget::add(std::string name, double value) {
  if (!(value >= 0.0)) throw NumericalError("error term '" + name + "' is negative or NaN");
  total += value;
  terms.push_back({std::move(name), value});
}

double ErrorBudget::term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return t.value;
  throw PreconditionError("no error term named '" + name + "'");
}

std::optional<double> ErrorBudget::diagnostic(const std::string& name) const {
  for (const auto& [k, v] : diagnostics)
    if (k == name) return v;
  return std::nullopt;
}

nlohmann::json to_json(const ErrorBudget& budget) {
  nlohmann::json j;
  j["bracket"] = budget.bracket;
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& t : budget.terms) terms[t.name] = t.value;
  j["terms"] = terms;
  j["total"] = budget.total;
  j["constant_policy"] = budget.constant_policy;
  if (budget.exponent_shift) j["exponent_shift"] = *budget.exponent_shift;
  j["vacuous"] = budget.vacuous;
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [k, v] : budget.diagnostics) diag[k] = v;
  j["diagnostics"] = diag;
  return j;
}

void write_budget_csv_header(std::ostream& out) { out << "scale,bracket,term,value\n"; }

void write_budget_csv(std::ostream& out, const std::string& scale, const ErrorBudget& budget) {
  out << std::setprecision(17);
  for (const auto& t : budget.terms)
    out << scale << ',' << budget.bracket << ',' << t.name << ',' << t.value << '\n';
  out << scale << ',' << budget.bracket << ",total," << budget.total << '\n';
}

} // namespace extremal
