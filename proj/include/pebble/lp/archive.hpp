#pragma once

// Witness archives: one JSON object per line,
//   {"c":"p/q","k":4,"D":[1,3],"certificate":[["merge:2","3/7"],...]}
// Verification rebuilds L_{|D|}(c; D) and checks the Farkas combination in
// exact arithmetic; no LP is solved.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pebble/lp/search.hpp"

namespace pebble::lp {

struct ArchiveEntry {
  Rational c;
  std::size_t k = 0;
  std::vector<std::size_t> D;
  Certificate certificate;
  BuildOptions build;  // written only when it differs from the default
};

nlohmann::json entry_to_json(const ArchiveEntry& e);
/// Throws InvalidInput on malformed entries.
ArchiveEntry entry_from_json(const nlohmann::json& j);

void write_archive(std::ostream& out, const BlockingResult& res, const BuildOptions& build = {});

CertificateCheck verify_entry(const ArchiveEntry& e);

struct ArchiveReport {
  std::size_t entries = 0;
  std::size_t valid = 0;
  std::vector<std::pair<std::size_t, std::string>> failures;  // (line, reason)
  // All entries share (c, k) and their sequences form a prefix-closed cover
  // of {1..k-1}^*: every sequence has exactly one prefix in the set.
  bool covers = false;
  bool ok() const { return entries > 0 && valid == entries; }
};

ArchiveReport verify_archive(std::istream& in);

/// Whether the sequences form a blocking set over {1..k-1}.
bool is_blocking_cover(const std::vector<std::vector<std::size_t>>& seqs, std::size_t k);

}  // namespace pebble::lp
