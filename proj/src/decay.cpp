#include "extremal/decay.hpp"

#include "extremal/errors.hpp"

#include <cmath>
#include <sstream>

namespace extremal {

DecayModel DecayModel::exponential(double c0, double lambda, double delta) {
  if (!(c0 > 0.0) || !(lambda > 0.0) || !(lambda < 1.0))
    throw PreconditionError("exponential decay needs c0 > 0 and lambda in (0,1)");
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  DecayModel d;
  d.kind_ = Kind::exponential;
  d.c0_ = c0;
  d.lambda_ = lambda;
  d.delta_ = delta;
  return d;
}

DecayModel DecayModel::tabulated(std::vector<double> values, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw PreconditionError("decay table entries must be finite and nonnegative");
    if (i > 0 && values[i] > values[i - 1])
      throw PreconditionError("decay table must be non-increasing");
  }
  DecayModel d;
  d.kind_ = Kind::tabulated;
  d.table_ = std::move(values);
  d.delta_ = delta;
  return d;
}

DecayModel DecayModel::zero(double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  DecayModel d;
  d.delta_ = delta;
  return d;
}

DecayModel DecayModel::for_map(const FullBranchMap& map, double delta) {
  return exponential(4.0, map.max_width().get_d(), delta);
}

std::string DecayModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::exponential: os << "exponential(c0=" << c0_ << ",lambda=" << lambda_ << ")"; break;
    case Kind::tabulated: os << "tabulated(" << table_.size() << " values)"; break;
    case Kind::zero: os << "zero"; break;
  }
  return os.str();
}

double DecayModel::operator()(std::size_t t) const {
  switch (kind_) {
    case Kind::exponential: return c0_ * std::pow(lambda_, static_cast<double>(t));
    case Kind::tabulated: return t < table_.size() ? table_[t] : 0.0;
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double DecayModel::range_sum(std::size_t from, std::size_t to) const {
  if (to <= from) return 0.0;
  switch (kind_) {
    case Kind::exponential:
      return c0_ * (std::pow(lambda_, static_cast<double>(from)) - std::pow(lambda_, static_cast<double>(to))) /
             (1.0 - lambda_);
    case Kind::tabulated: {
      double s = 0.0;
      for (std::size_t j = from; j < to && j < table_.size(); ++j) s += table_[j];
      return s;
    }
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double DecayModel::tail_sum(std::size_t from) const {
  switch (kind_) {
    case Kind::exponential: return c0_ * std::pow(lambda_, static_cast<double>(from)) / (1.0 - lambda_);
    case Kind::tabulated: return range_sum(from, table_.size());
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

} // namespace extremal
