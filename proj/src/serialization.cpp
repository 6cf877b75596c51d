#include "extremal/serialization.hpp"

#include "extremal/errors.hpp"

#include <fstream>
#include <sstream>

namespace extremal {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return from_double(j.get<double>());
  throw PreconditionError("expected a number or a rational string, got " + j.dump());
}

FullBranchMap map_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw PreconditionError("map spec must be a JSON object");
  std::string name = spec.value("name", std::string("custom"));
  if (spec.contains("builtin")) return FullBranchMap::builtin(spec.at("builtin").get<std::string>());
  if (spec.contains("widths")) {
    std::vector<Rational> widths;
    for (const auto& w : spec.at("widths")) widths.push_back(rational_from_json(w));
    std::vector<bool> increasing;
    if (spec.contains("increasing"))
      for (const auto& b : spec.at("increasing")) increasing.push_back(b.get<bool>());
    return FullBranchMap::from_widths(widths, increasing, name);
  }
  if (spec.contains("branches")) {
    std::vector<AffineBranch> branches;
    for (const auto& b : spec.at("branches"))
      branches.push_back({rational_from_json(b.at("lo")), rational_from_json(b.at("hi")),
                          rational_from_json(b.at("slope")), rational_from_json(b.at("intercept"))});
    return FullBranchMap::affine(std::move(branches), name);
  }
  throw PreconditionError("map spec needs one of builtin, widths, branches");
}

nlohmann::json map_to_json(const FullBranchMap& map) {
  map.require_affine("map serialization");
  nlohmann::json j;
  j["name"] = map.name();
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : map.branches())
    branches.push_back({{"lo", to_string(b.lo)},
                        {"hi", to_string(b.hi)},
                        {"slope", to_string(*b.slope)},
                        {"intercept", to_string(*b.intercept)}});
  j["branches"] = branches;
  return j;
}

FullBranchMap parse_map_spec(const std::string& text) {
  if (text.empty()) throw PreconditionError("empty map spec");
  if (text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad map JSON: ") + e.what());
    }
    return map_from_json(j);
  }
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
    std::ifstream in(text);
    if (!in) throw PreconditionError("cannot open map file " + text);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad map JSON: ") + e.what());
    }
    return map_from_json(j);
  }
  return FullBranchMap::builtin(text);
}

nlohmann::json set_to_json(const IntervalUnion<Rational>& set) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : set.components()) j.push_back({to_string(c.lo), to_string(c.hi)});
  return j;
}

IntervalUnion<Rational> set_from_json(const nlohmann::json& j, Topology topology) {
  if (!j.is_array()) throw PreconditionError("interval set must be a JSON array");
  std::vector<Interval<Rational>> parts;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2) throw PreconditionError("interval must be [lo, hi]");
    parts.emplace_back(rational_from_json(c[0]), rational_from_json(c[1]));
  }
  return IntervalUnion<Rational>::from_intervals(std::move(parts), topology);
}

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw PreconditionError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw PreconditionError("empty list");
  return out;
}

} // namespace

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text)) out.push_back(parse_rational(s));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text)) out.push_back(parse_rational(s).get_d());
  return out;
}

std::size_t parse_count(const std::string& text) {
  Rational v;
  auto caret = text.find('^');
  if (caret != std::string::npos) {
    Rational base = parse_rational(text.substr(0, caret));
    Rational e = parse_rational(text.substr(caret + 1));
    if (base.get_den() != 1 || e.get_den() != 1 || e < 0 || e > 64)
      throw PreconditionError("bad power '" + text + "'");
    v = 1;
    for (long i = 0; i < e.get_num().get_si(); ++i) v *= base;
  } else {
    v = parse_rational(text);
  }
  if (v.get_den() != 1 || v < 0) throw PreconditionError("'" + text + "' is not a nonnegative integer");
  if (!v.get_num().fits_ulong_p()) throw PreconditionError("'" + text + "' is too large");
  return static_cast<std::size_t>(v.get_num().get_ui());
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text)) out.push_back(parse_count(s));
  return out;
}

} // namespace extremal
