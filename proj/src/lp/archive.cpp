#include "pebble/lp/archive.hpp"

#include <algorithm>
#include <set>

namespace pebble::lp {

nlohmann::json entry_to_json(const ArchiveEntry& e) {
  nlohmann::json j;
  j["c"] = format_rational(e.c);
  j["k"] = e.k;
  j["D"] = e.D;
  nlohmann::json cert = nlohmann::json::array();
  for (const auto& [id, y] : e.certificate.entries) cert.push_back({id, format_rational(y)});
  j["certificate"] = cert;
  const BuildOptions def;
  if (e.build.property5 != def.property5 || e.build.property6 != def.property6 ||
      e.build.initial_compliance != def.initial_compliance) {
    j["options"] = {{"property5", e.build.property5},
                    {"property6", e.build.property6},
                    {"initial_compliance", e.build.initial_compliance}};
  }
  return j;
}

ArchiveEntry entry_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("archive entry must be an object");
  for (const char* key : {"c", "k", "D", "certificate"}) {
    if (!j.contains(key)) throw InvalidInput(std::string("archive entry lacks \"") + key + "\"");
  }
  ArchiveEntry e;
  if (!j["c"].is_string()) throw InvalidInput("\"c\" must be a rational string");
  e.c = parse_rational(j["c"].get<std::string>());
  if (!j["k"].is_number_integer() || j["k"].get<long>() < 2) throw InvalidInput("\"k\" must be an integer >= 2");
  e.k = j["k"].get<std::size_t>();
  if (!j["D"].is_array()) throw InvalidInput("\"D\" must be an array");
  for (const auto& d : j["D"]) {
    if (!d.is_number_integer() || d.get<long>() < 1) throw InvalidInput("\"D\" entries must be positive integers");
    e.D.push_back(d.get<std::size_t>());
  }
  if (!j["certificate"].is_array()) throw InvalidInput("\"certificate\" must be an array");
  for (const auto& pair : j["certificate"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw InvalidInput("certificate entries must be [\"row-id\", \"coeff\"]");
    }
    e.certificate.entries.emplace_back(pair[0].get<std::string>(), parse_rational(pair[1].get<std::string>()));
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    e.build.property5 = o.value("property5", e.build.property5);
    e.build.property6 = o.value("property6", e.build.property6);
    e.build.initial_compliance = o.value("initial_compliance", e.build.initial_compliance);
  }
  return e;
}

void write_archive(std::ostream& out, const BlockingResult& res, const BuildOptions& build) {
  for (const auto& w : res.witnesses) {
    ArchiveEntry e{res.c, res.k, w.D, w.certificate, build};
    out << entry_to_json(e).dump() << '\n';
  }
}

CertificateCheck verify_entry(const ArchiveEntry& e) {
  try {
    return verify_certificate(build_L(e.c, e.D, e.k, e.build), e.certificate);
  } catch (const InvalidInput& ex) {
    return {false, ex.what()};
  }
}

bool is_blocking_cover(const std::vector<std::vector<std::size_t>>& seqs, std::size_t k) {
  if (seqs.empty() || k < 2) return false;
  const std::set<std::vector<std::size_t>> set(seqs.begin(), seqs.end());
  // Walk the tree: a node is closed if it is in the set, otherwise all its
  // children must be closed. Depth is bounded by the longest sequence.
  std::size_t longest = 0;
  for (const auto& s : seqs) longest = std::max(longest, s.size());
  std::vector<std::size_t> node;
  auto closed = [&](auto&& self) -> bool {
    if (set.count(node)) return true;
    if (node.size() >= longest) return false;
    for (std::size_t d = 1; d < k; ++d) {
      node.push_back(d);
      const bool ok = self(self);
      node.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return closed(closed);
}

ArchiveReport verify_archive(std::istream& in) {
  ArchiveReport rep;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<std::size_t>> seqs;
  std::optional<std::pair<Rational, std::size_t>> key;
  bool same_key = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++rep.entries;
    try {
      const ArchiveEntry e = entry_from_json(nlohmann::json::parse(line));
      const auto chk = verify_entry(e);
      if (chk.valid) {
        ++rep.valid;
      } else {
        rep.failures.emplace_back(lineno, chk.reason);
      }
      if (!key) key = std::make_pair(e.c, e.k);
      same_key = same_key && key->first == e.c && key->second == e.k;
      seqs.push_back(e.D);
    } catch (const std::exception& ex) {
      rep.failures.emplace_back(lineno, ex.what());
    }
  }
  rep.covers = rep.ok() && same_key && key && is_blocking_cover(seqs, key->second);
  return rep;
}

}  // namespace pebble::lp
