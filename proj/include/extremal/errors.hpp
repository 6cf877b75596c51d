#ifndef EXTREMAL_ERRORS_HPP
#define EXTREMAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace extremal {

/// A caller violated an operation's precondition (bad radius, infeasible
/// threshold, topology mismatch, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its resource budget (component count,
/// periodic-point count, horizon). The usual remedy is Monte Carlo.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point sits on a branch boundary, where the symbolic coding is ambiguous.
class BoundaryPoint : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its tolerance or lacks data.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

} // namespace extremal

#endif
