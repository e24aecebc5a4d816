#include "pebble/lp/program.hpp"

namespace pebble::lp {

std::size_t LinearProgram::add_variable(std::string name) {
  if (var_ids_.count(name)) throw InvalidInput("duplicate variable '" + name + "'");
  var_ids_[name] = names_.size();
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

void LinearProgram::add_row(std::string id, std::vector<std::pair<std::size_t, Rational>> coeffs,
                            Relation rel, Rational rhs) {
  if (row_ids_.count(id)) throw InvalidInput("duplicate row id '" + id + "'");
  // Merge repeated variables and drop zeros so rows are canonical.
  std::map<std::size_t, Rational> merged;
  for (auto& [v, a] : coeffs) {
    if (v >= names_.size()) throw InvalidInput("row '" + id + "' references an undeclared variable");
    Rational x = a;
    x.canonicalize();
    merged[v] += x;
  }
  std::vector<std::pair<std::size_t, Rational>> clean;
  for (auto& [v, a] : merged) {
    if (a != 0) clean.emplace_back(v, a);
  }
  rhs.canonicalize();
  row_ids_[id] = rows_.size();
  rows_.push_back({std::move(id), std::move(clean), rel, std::move(rhs)});
}

std::optional<std::size_t> LinearProgram::row_index(const std::string& id) const {
  auto it = row_ids_.find(id);
  if (it == row_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LinearProgram::var_index(const std::string& name) const {
  auto it = var_ids_.find(name);
  if (it == var_ids_.end()) return std::nullopt;
  return it->second;
}

LinearProgram LinearProgram::restricted(const std::vector<std::size_t>& rows) const {
  LinearProgram out;
  for (const auto& n : names_) out.add_variable(n);
  for (auto i : rows) {
    const Row& r = rows_.at(i);
    out.add_row(r.id, r.coeffs, r.rel, r.rhs);
  }
  return out;
}

CertificateCheck verify_certificate(const LinearProgram& lp, const Certificate& cert) {
  std::vector<Rational> combo(lp.num_vars(), Rational(0));
  Rational rhs = 0;
  bool any = false;
  for (const auto& [id, y] : cert.entries) {
    if (y == 0) continue;
    any = true;
    if (id.rfind("lb:", 0) == 0) {
      const auto v = lp.var_index(id.substr(3));
      if (!v) return {false, "unknown variable in '" + id + "'"};
      if (y < 0) return {false, "negative bound multiplier on '" + id + "'"};
      combo[*v] -= y;
      continue;
    }
    const auto r = lp.row_index(id);
    if (!r) return {false, "unknown row '" + id + "'"};
    const Row& row = lp.rows()[*r];
    if (row.rel == Relation::LessEq && y < 0) return {false, "negative multiplier on inequality '" + id + "'"};
    for (const auto& [v, a] : row.coeffs) combo[v] += y * a;
    rhs += y * row.rhs;
  }
  if (!any) return {false, "empty certificate"};
  for (std::size_t j = 0; j < combo.size(); ++j) {
    if (combo[j] != 0) return {false, "combination leaves a nonzero coefficient on " + lp.names()[j]};
  }
  if (rhs >= 0) return {false, "combined right-hand side is not negative"};
  return {true, ""};
}

CertificateCheck verify_point(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return {false, "point has the wrong dimension"};
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0) return {false, "negative value for " + lp.names()[j]};
  }
  for (const auto& row : lp.rows()) {
    Rational lhs = 0;
    for (const auto& [v, a] : row.coeffs) lhs += a * x[v];
    if (row.rel == Relation::LessEq ? lhs > row.rhs : lhs != row.rhs) {
      return {false, "row '" + row.id + "' violated"};
    }
  }
  return {true, ""};
}

Certificate certificate_from_multipliers(const LinearProgram& lp, const std::vector<Rational>& lambda) {
  Certificate cert;
  std::vector<Rational> z(lp.num_vars(), Rational(0));
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (lambda[i] == 0) continue;
    const Row& row = lp.rows()[i];
    cert.entries.emplace_back(row.id, lambda[i]);
    for (const auto& [v, a] : row.coeffs) z[v] += lambda[i] * a;
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] != 0) cert.entries.emplace_back("lb:" + lp.names()[j], z[j]);
  }
  return cert;
}

}  // namespace pebble::lp
