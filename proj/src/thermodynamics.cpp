#include "extremal/thermodynamics.hpp"

#include "extremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace extremal {

Potential Potential::geometric() { return Potential(); }

Potential Potential::constant(double value) {
  Potential p;
  p.kind_ = Kind::constant;
  p.constant_ = value;
  p.name_ = value == 0.0 ? "zero" : "constant:" + std::to_string(value);
  return p;
}

Potential Potential::per_branch(std::vector<double> values) {
  Potential p;
  p.kind_ = Kind::per_branch;
  p.per_branch_ = std::move(values);
  p.name_ = "branch:";
  for (std::size_t i = 0; i < p.per_branch_.size(); ++i)
    p.name_ += (i ? "," : "") + std::to_string(p.per_branch_[i]);
  return p;
}

Potential Potential::function(std::function<double(double)> phi, std::string name) {
  if (!phi) throw PreconditionError("potential function is empty");
  Potential p;
  p.kind_ = Kind::function;
  p.phi_ = std::move(phi);
  p.name_ = std::move(name);
  return p;
}

Potential Potential::parse(const std::string& text) {
  if (text == "geometric") return geometric();
  if (text == "zero") return constant(0.0);
  if (text.rfind("constant:", 0) == 0) return constant(parse_rational(text.substr(9)).get_d());
  if (text.rfind("branch:", 0) == 0) {
    std::vector<double> values;
    std::stringstream ss(text.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_rational(item).get_d());
    return per_branch(std::move(values));
  }
  throw PreconditionError("unknown potential '" + text + "'");
}

double Potential::value(const FullBranchMap& map, double x) const {
  switch (kind_) {
    case Kind::geometric: return -std::log(std::abs(map.derivative(x)));
    case Kind::constant: return constant_;
    case Kind::per_branch: {
      std::size_t i = map.branch_of(x);
      if (i >= per_branch_.size()) throw PreconditionError("potential has too few branch values");
      return per_branch_[i];
    }
    case Kind::function: return phi_(x);
  }
  return 0.0;
}

double Potential::birkhoff_sum(const FullBranchMap& map, const PeriodicPoint& p) const {
  switch (kind_) {
    case Kind::geometric: return -std::log(p.multiplier.get_d());
    case Kind::constant: return constant_ * static_cast<double>(p.word.size());
    case Kind::per_branch: {
      double s = 0.0;
      for (std::size_t i : p.word) {
        if (i >= per_branch_.size()) throw PreconditionError("potential has too few branch values");
        s += per_branch_[i];
      }
      return s;
    }
    case Kind::function: {
      // Follow the orbit along the word so boundary points stay on their branch.
      Rational x = p.point;
      if (p.boundary_degenerate) x = 1;
      double s = 0.0;
      for (std::size_t i : p.word) {
        s += phi_(x.get_d());
        const Branch& b = map.branch(i);
        x = *b.slope * x + *b.intercept;
      }
      return s;
    }
  }
  return 0.0;
}

double Potential::variation(const FullBranchMap& map, std::size_t n, std::size_t samples) const {
  if (kind_ == Kind::constant) return 0.0;
  if (kind_ == Kind::per_branch && n >= 1) return 0.0;
  if (kind_ == Kind::geometric && map.is_affine()) return 0.0;
  if (samples < 2) samples = 2;

  double count = std::pow(static_cast<double>(map.branch_count()), static_cast<double>(n));
  if (count * static_cast<double>(samples) > 5e7)
    throw BudgetExceeded("variation sampling exceeds its budget");

  // Enumerate n-cylinders as images of [0,1] under composed inverse branches.
  double worst = 0.0;
  std::vector<std::size_t> word(n, 0);
  while (true) {
    double a = 0.0, b = 1.0;
    for (std::size_t k = n; k-- > 0;) {
      double na = map.inverse(word[k], a), nb = map.inverse(word[k], b);
      a = std::min(na, nb);
      b = std::max(na, nb);
    }
    double lo = 1e300, hi = -1e300;
    for (std::size_t s = 0; s < samples; ++s) {
      double x = a + (b - a) * (static_cast<double>(s) + 0.5) / static_cast<double>(samples);
      double v = value(map, x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);

    std::size_t k = n;
    while (k > 0 && ++word[k - 1] == map.branch_count()) word[--k] = 0;
    if (k == 0) break;
  }
  return worst;
}

namespace {

template <class Visit>
void enumerate_words(const FullBranchMap& map, std::size_t n, std::size_t cap, std::size_t budget,
                     Visit&& visit) {
  map.require_affine("periodic points");
  if (n == 0) throw PreconditionError("period must be at least 1");
  if (n > cap) throw BudgetExceeded("period exceeds the configured cap");
  double count = std::pow(static_cast<double>(map.branch_count()), static_cast<double>(n));
  if (count > static_cast<double>(budget))
    throw BudgetExceeded("periodic point count exceeds the budget");

  // Composite F_{w_{m-1}} ∘ ... ∘ F_{w_0}(x) = a·x + b, kept per depth.
  std::vector<Rational> a(n + 1), b(n + 1);
  a[0] = 1;
  b[0] = 0;
  std::vector<std::size_t> word;
  word.reserve(n);

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      visit(word, a[n], b[n]);
      return;
    }
    for (std::size_t i = 0; i < map.branch_count(); ++i) {
      const Branch& br = map.branch(i);
      a[depth + 1] = *br.slope * a[depth];
      b[depth + 1] = *br.slope * b[depth] + *br.intercept;
      word.push_back(i);
      self(self, depth + 1);
      word.pop_back();
    }
  };
  recurse(recurse, 0);
}

} // namespace

std::vector<PeriodicPoint> periodic_points(const FullBranchMap& map, std::size_t n, std::size_t cap,
                                           std::size_t budget) {
  std::vector<PeriodicPoint> out;
  enumerate_words(map, n, cap, budget,
                  [&](const std::vector<std::size_t>& word, const Rational& a, const Rational& b) {
                    PeriodicPoint p;
                    p.point = b / (1 - a);
                    if (p.point == 1) {
                      p.point = 0;
                      p.boundary_degenerate = true;
                    }
                    p.multiplier = abs(a);
                    p.word = word;
                    out.push_back(std::move(p));
                  });
  return out;
}

std::vector<PeriodicPoint> canonical_periodic_points(const FullBranchMap& map, std::size_t n,
                                                     std::size_t cap, std::size_t budget) {
  std::vector<PeriodicPoint> all = periodic_points(map, n, cap, budget);
  std::stable_sort(all.begin(), all.end(), [](const PeriodicPoint& x, const PeriodicPoint& y) {
    if (x.point != y.point) return x.point < y.point;
    return !x.boundary_degenerate && y.boundary_degenerate;
  });
  std::vector<PeriodicPoint> out;
  for (auto& p : all) {
    if (!out.empty() && out.back().point == p.point) {
      out.back().boundary_degenerate = true;
      continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Rational geometric_partition_sum(const FullBranchMap& map, std::size_t n, std::size_t cap) {
  Rational z = 0;
  enumerate_words(map, n, cap, kDefaultPeriodicPointBudget,
                  [&](const std::vector<std::size_t>&, const Rational& a, const Rational&) {
                    z += 1 / abs(a);
                  });
  return z;
}

double partition_sum(const FullBranchMap& map, const Potential& potential, std::size_t n,
                     std::size_t cap) {
  if (potential.kind() == Potential::Kind::geometric)
    return geometric_partition_sum(map, n, cap).get_d();
  long double z = 0.0L;
  for (const auto& p : periodic_points(map, n, cap))
    z += std::exp(static_cast<long double>(potential.birkhoff_sum(map, p)));
  return static_cast<double>(z);
}

std::vector<PressureRow> pressure(const FullBranchMap& map, const Potential& potential,
                                  std::size_t n_max, std::size_t cap) {
  if (n_max > cap) throw BudgetExceeded("n_max exceeds the configured cap");
  std::vector<PressureRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double z = partition_sum(map, potential, n, cap);
    rows.push_back({n, z, std::log(z) / static_cast<double>(n)});
  }
  return rows;
}

double thermodynamic_theta(const FullBranchMap& map, const Potential& potential,
                           const Rational& zeta, std::size_t p, std::size_t pressure_n) {
  map.require_affine("thermodynamic theta");
  if (p == 0) throw PreconditionError("period must be at least 1");
  PeriodicPoint pt;
  pt.point = zeta;
  pt.multiplier = 1;
  Rational x = zeta;
  for (std::size_t k = 0; k < p; ++k) {
    std::size_t i = map.branch_of(x);
    pt.word.push_back(i);
    pt.multiplier *= abs(*map.branch(i).slope);
    x = map.apply(x);
  }
  if (x != zeta) throw PreconditionError("zeta is not a period-p point");
  double s = potential.birkhoff_sum(map, pt);
  double pr = pressure(map, potential, pressure_n).back().pressure;
  return 1.0 - std::exp(s - static_cast<double>(p) * pr);
}

} // namespace extremal
