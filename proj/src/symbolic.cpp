#include "extremal/symbolic.hpp"

#include "extremal/errors.hpp"

namespace extremal {

DigitSampler::DigitSampler(const FullBranchMap& map) {
  map.require_affine("digit sampling");
  mpz_class scale = 1;
  scale <<= 64;
  Rational cumulative = 0;
  for (const auto& b : map.branches()) {
    cumulative += b.width;
    mpz_class t = (scale * cumulative.get_num()) / cumulative.get_den();
    if (t >= scale) t = scale - 1;
    thresholds_.push_back(std::stoull(t.get_str()));
  }
}

SymbolicOrbit::SymbolicOrbit(const FullBranchMap& map, std::vector<std::size_t> digits,
                             std::size_t depth)
    : map_(&map), digits_(std::move(digits)), depth_(depth) {
  if (depth_ == 0) throw PreconditionError("reconstruction depth must be positive");
  if (digits_.size() < depth_) throw PreconditionError("orbit shorter than its depth");
}

double SymbolicOrbit::point(std::size_t k) const {
  if (k >= horizon()) throw PreconditionError("orbit index beyond horizon");
  double y = 0.5;
  for (std::size_t m = k + depth_; m-- > k;) y = map_->inverse(digits_[m], y);
  return y;
}

SymbolicOrbit symbolic_sample(const FullBranchMap& map, Rng& rng, std::size_t horizon,
                              std::size_t depth) {
  DigitSampler sampler(map);
  std::vector<std::size_t> digits(horizon + depth - 1);
  for (auto& d : digits) d = sampler(rng);
  return SymbolicOrbit(map, std::move(digits), depth);
}

} // namespace extremal
