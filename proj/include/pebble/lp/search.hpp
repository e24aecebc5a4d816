#pragma once

// Searches on top of the programs: c-witnesses and blocking sets (lower
// bounds), periodic minimal c for a device tuple and the enumeration of
// device tuples (upper bounds).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pebble/lp/build.hpp"
#include "pebble/lp/feasibility.hpp"
#include "pebble/periodic.hpp"

namespace pebble::lp {

class InfeasibleProgram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L_{|D|}(c; D) infeasible, decided exactly.
bool is_witness(const Rational& c, const std::vector<std::size_t>& D, std::size_t k, const BuildOptions& opt = {});

struct Witness {
  std::vector<std::size_t> D;
  Certificate certificate;
};

enum class SearchStatus { Blocking, OpenPath, Inconclusive };
const char* to_string(SearchStatus s);

struct BlockingOptions {
  std::size_t depth_limit = 64;
  std::size_t lp_budget = 1000000;
  BuildOptions build;
};

struct BlockingResult {
  SearchStatus status = SearchStatus::Inconclusive;
  Rational c;
  std::size_t k = 0;
  std::vector<Witness> witnesses;          // lexicographic order
  std::vector<std::size_t> open_path;      // OpenPath: a prefix feasible at the depth limit
  std::vector<Rational> open_point;        // its exact feasible point
  std::size_t lp_solves = 0;
  std::size_t exact_fallbacks = 0;         // certifications that needed the full exact simplex
  std::size_t max_depth = 0;               // longest witness
  bool blocking() const { return status == SearchStatus::Blocking; }
};

/// Depth-first search over Sigma* = {1..k-1}*, children in order 1..k-1.
/// Every witness carries an exact certificate; an open path carries an
/// exact point. Running out of LP solves gives Inconclusive.
BlockingResult find_blocking_set(const Rational& c, std::size_t k, const BlockingOptions& opt = {});
/// Same tree, explored level by level with the nodes of a level solved
/// concurrently. Same witness set as the serial search.
BlockingResult find_blocking_set_parallel(const Rational& c, std::size_t k, const BlockingOptions& opt = {});

/// Maximises t_{10m} over L_{10m}(c; D^10) and returns (t_{10m}/t_{9m})^{1/m}.
/// Throws InfeasibleProgram when that program is infeasible.
Real estimate_q(const Rational& c, const std::vector<std::size_t>& D, std::size_t k);

/// Float L*(c, q; D) feasibility.
bool lstar_feasible_float(Real c, Real q, const std::vector<std::size_t>& D, std::size_t k,
                          const BuildOptions& opt = {});

struct PeriodicFit {
  std::vector<std::size_t> D;
  std::size_t k = 0;
  Rational c;               // certified: L*(c, q; D) has an exact, strictly ordered point
  Rational q;
  Real c_float = 0;         // float minimum before certification
  Real q_estimate = 0;      // estimate_q seed (0 if that program was infeasible)
  PeriodicScheme<Rational> scheme;
  std::size_t lp_solves = 0;
};

struct PeriodicOptions {
  Real tol = 1e-9L;         // bisection width in c
  std::size_t grid = 24;    // coarse q grid before the golden-section search
  BuildOptions build;
};

/// Minimal c (to tol) for which some q makes L*(c, q; D) feasible, then an
/// exact certification at rational (c, q). Throws InfeasibleProgram if no
/// c <= 2 works.
PeriodicFit min_c_periodic(const std::vector<std::size_t>& D, std::size_t k, const PeriodicOptions& opt = {});

struct EnumerateResult {
  std::vector<std::size_t> D;
  Rational c;
  Rational q;
  bool complete = false;      // every tuple up to max_len was decided
  std::size_t nodes = 0;
  std::size_t evaluated = 0;  // tuples that reached min_c_periodic
};

/// Tuples starting with device 1 (any periodic tuple has such a rotation),
/// pruned when a prefix is already a witness at the incumbent c.
EnumerateResult enumerate_sequences(std::size_t k, std::size_t max_len, std::size_t node_budget);

}  // namespace pebble::lp
