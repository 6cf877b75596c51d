#include "extremal/table.hpp"

#include "extremal/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

namespace extremal {

void Table::add_row(std::vector<nlohmann::json> row) {
  if (row.size() != columns.size()) throw PreconditionError("row width does not match the columns");
  rows.push_back(std::move(row));
}

namespace {

void write_cell(std::ostream& out, const nlohmann::json& v) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << s;
    } else {
      out << '"';
      for (char c : s) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    }
  } else if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::isinf(d)) out << (d > 0 ? "inf" : "-inf");
    else if (std::isnan(d)) out << "nan";
    else out << std::setprecision(std::numeric_limits<double>::max_digits10) << d;
  } else if (v.is_null()) {
  } else {
    out << v.dump();
  }
}

} // namespace

void write_csv(std::ostream& out, const Table& table) {
  out << "# schema_version=" << kSchemaVersion << " config=" << table.config.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(out, row[i]);
    }
    out << '\n';
  }
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = table.config;
  j["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& v = row[i];
      // JSON has no infinities; keep them readable as strings.
      if (v.is_number_float() && !std::isfinite(v.get<double>()))
        r[table.columns[i]] = std::isnan(v.get<double>()) ? "nan" : (v.get<double>() > 0 ? "inf" : "-inf");
      else
        r[table.columns[i]] = v;
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

} // namespace extremal
