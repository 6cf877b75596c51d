#ifndef EXTREMAL_TABLE_HPP
#define EXTREMAL_TABLE_HPP

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace extremal {

inline constexpr int kSchemaVersion = 1;

/// Output table: named columns plus the resolved config that produced it.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json config = nlohmann::json::object();

  void add_row(std::vector<nlohmann::json> row);
};

/// CSV with a leading comment line carrying schema version and config.
void write_csv(std::ostream& out, const Table& table);
/// {schema_version, config, columns, rows: [{column: value}]}.
nlohmann::json to_json(const Table& table);

} // namespace extremal

#endif
