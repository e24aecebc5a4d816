#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pebble/scalar.hpp"

namespace pebble::cli {

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidInput("unknown format '" + s + "' (text|csv|json)");
}

namespace {

std::string cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + cell(v[i]);
    return out + ")";
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

std::string render(const Report& r, Format f) {
  std::ostringstream os;
  if (f == Format::Json) {
    nlohmann::ordered_json doc;
    doc["command"] = r.command;
    for (auto it = r.meta.begin(); it != r.meta.end(); ++it) doc[it.key()] = it.value();
    doc["rows"] = r.rows;
    os << doc.dump(2) << '\n';
    return os.str();
  }
  std::vector<std::vector<std::string>> table;
  table.push_back(r.columns);
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (const auto& c : r.columns) line.push_back(row.contains(c) ? cell(row[c]) : "");
    table.push_back(std::move(line));
  }
  if (f == Format::Csv) {
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_escape(line[i]);
      os << '\n';
    }
    return os.str();
  }
  for (auto it = r.meta.begin(); it != r.meta.end(); ++it) os << it.key() << ": " << cell(it.value()) << '\n';
  if (r.columns.empty()) return os.str();
  std::vector<std::size_t> width(r.columns.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace pebble::cli
