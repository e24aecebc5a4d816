#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pebble/scalar.hpp"
#include "report.hpp"

namespace pebble::cli {

enum class Mode { Exact, Float };

struct RunConfig {
  std::string subcommand;
  std::vector<std::size_t> ks;
  Real tol = 1e-9L;
  Mode mode = Mode::Exact;
  std::size_t max_depth = 64;
  std::size_t nodes = 1000000;
  int jobs = 1;
  Format format = Format::Text;
  std::string input;
  std::string out;
  std::string archive;
  std::optional<Rational> c;
  bool blocking = false;
  int table = 2;
  int t_lo = 0;
  int t_hi = 17;
};

/// PEBBLE_TOL if set and positive, else 1e-9.
Real default_tolerance();
/// "7", "2:14" or "3,5,8".
std::vector<std::size_t> parse_k_list(const std::string& s);

Report cmd_eval(const RunConfig& cfg);
Report cmd_table1(const RunConfig& cfg);
Report cmd_tables23(const RunConfig& cfg);
Report cmd_bounds(const RunConfig& cfg);
Report cmd_search(const RunConfig& cfg);
Report cmd_witness_find(const RunConfig& cfg);
Report cmd_witness_verify(const RunConfig& cfg);

}  // namespace pebble::cli
