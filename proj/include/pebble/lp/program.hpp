#pragma once

// Linear feasibility programs over non-negative variables, with rows
// identified by stable string ids so that certificates can be archived
// and replayed without the solver.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebble/scalar.hpp"

namespace pebble::lp {

enum class Relation { LessEq, Equal };

struct Row {
  std::string id;
  std::vector<std::pair<std::size_t, Rational>> coeffs;  // (variable, coefficient)
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

/// Every variable is implicitly >= 0; the bound of variable j is named
/// "lb:<name>" in certificates.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name);
  void add_row(std::string id, std::vector<std::pair<std::size_t, Rational>> coeffs, Relation rel,
               Rational rhs);

  std::size_t num_vars() const { return names_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<Row>& mutable_rows() { return rows_; }
  std::optional<std::size_t> row_index(const std::string& id) const;
  std::optional<std::size_t> var_index(const std::string& name) const;

  /// Sub-program keeping only the listed rows (same variables).
  LinearProgram restricted(const std::vector<std::size_t>& rows) const;

 private:
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  std::map<std::string, std::size_t> row_ids_;
  std::map<std::string, std::size_t> var_ids_;
};

/// Farkas certificate: multipliers on rows (>= 0 on inequalities, free on
/// equalities) and on variable bounds (>= 0) such that
///   sum_i y_i a_i - sum_j z_j e_j = 0  and  sum_i y_i b_i < 0.
struct Certificate {
  std::vector<std::pair<std::string, Rational>> entries;  // "row-id" or "lb:<var>"
};

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

CertificateCheck verify_certificate(const LinearProgram& lp, const Certificate& cert);

/// Every row holds at x exactly (and x >= 0).
CertificateCheck verify_point(const LinearProgram& lp, const std::vector<Rational>& x);

/// Builds the certificate entries from row multipliers lambda (one per row),
/// dropping zeros and appending the bound multipliers sum_i lambda_i a_i.
Certificate certificate_from_multipliers(const LinearProgram& lp, const std::vector<Rational>& lambda);

}  // namespace pebble::lp
