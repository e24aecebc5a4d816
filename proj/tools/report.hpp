#pragma once

// Command results and their three renderings. Every command fills one
// Report; json, csv and text are produced from the same rows so the column
// order is fixed in one place (Report::columns).

#include <string>
#include <vector>

#include <json.hpp>

namespace pebble::cli {

enum class Format { Text, Csv, Json };
Format parse_format(const std::string& s);

enum ExitCode { kOk = 0, kInvalid = 2, kInconclusive = 3, kInternal = 4 };

struct Report {
  std::string command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  int exit_code = kOk;
};

std::string render(const Report& r, Format f);

}  // namespace pebble::cli
