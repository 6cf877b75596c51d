#ifndef EXTREMAL_SERIALIZATION_HPP
#define EXTREMAL_SERIALIZATION_HPP

#include "extremal/full_branch_map.hpp"
#include "extremal/interval_set.hpp"
#include "extremal/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace extremal {

/// Map specs:
///   {"builtin": "doubling"}
///   {"widths": ["1/2","1/4","1/4"], "increasing": [true,false,true]}
///   {"branches": [{"lo":"0","hi":"1/2","slope":"2","intercept":"0"}, ...]}
/// Numbers may be given as JSON numbers or as rational strings.
FullBranchMap map_from_json(const nlohmann::json& spec);
nlohmann::json map_to_json(const FullBranchMap& map);

/// A builtin name ("doubling", "tripling", "widths:..."), inline JSON, or a
/// path to a JSON file.
FullBranchMap parse_map_spec(const std::string& text);

/// [["lo","hi"], ...] with endpoints as "p/q" strings.
nlohmann::json set_to_json(const IntervalUnion<Rational>& set);
IntervalUnion<Rational> set_from_json(const nlohmann::json& j, Topology topology = Topology::circle);

Rational rational_from_json(const nlohmann::json& j);

/// Comma list of rationals: "1/3,0.5,1e-3".
std::vector<Rational> parse_rational_list(const std::string& text);
/// Comma list of doubles.
std::vector<double> parse_double_list(const std::string& text);
/// Comma list of nonnegative integers, scientific notation allowed
/// ("1e3,2^10,5000"); each entry must be an exact integer.
std::vector<std::size_t> parse_count_list(const std::string& text);
std::size_t parse_count(const std::string& text);

} // namespace extremal

#endif
