#include "commands.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pebble/bounds.hpp"
#include "pebble/lp/archive.hpp"
#include "pebble/lp/table1.hpp"
#include "pebble/recursive.hpp"
#include "pebble/trace_io.hpp"

namespace pebble::cli {

using nlohmann::ordered_json;

Real default_tolerance() {
  if (const char* env = std::getenv("PEBBLE_TOL")) {
    const Real v = parse_real(env);
    if (!(v > 0)) throw InvalidInput("PEBBLE_TOL must be positive");
    return v;
  }
  return 1e-9L;
}

std::vector<std::size_t> parse_k_list(const std::string& s) {
  auto num = [](const std::string& t) -> std::size_t {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size() || v < 1) throw InvalidInput("bad k value '" + t + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (const auto colon = s.find(':'); colon != std::string::npos) {
    const std::size_t lo = num(s.substr(0, colon)), hi = num(s.substr(colon + 1));
    if (lo > hi) throw InvalidInput("empty k range '" + s + "'");
    for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(num(part));
  if (out.empty()) throw InvalidInput("no k given");
  return out;
}

namespace {

double dbl(Real v) { return static_cast<double>(v); }

const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::InitialInterval: return "initial_interval";
    case TermKind::MergedInterval: return "merged_interval";
    case TermKind::Gap: return "gap";
  }
  return "?";
}

template <class T>
std::string exact_text(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return format_rational(v);
  } else if constexpr (std::is_same_v<T, Interval>) {
    return "[" + format_real(ScalarTraits<Rational>::to_real(v.lo()), 15) + ", " +
           format_real(ScalarTraits<Rational>::to_real(v.hi()), 15) + "]";
  } else {
    return format_real(v, 15);
  }
}

template <class T>
void fill_compliance(Report& r, const ComplianceReport<T>& rep, const std::vector<Snapshot<T>>& snaps,
                     std::size_t first, std::size_t k) {
  using Tr = ScalarTraits<T>;
  r.meta["c"] = dbl(Tr::to_real(rep.worst_ratio));
  r.meta["c_value"] = exact_text(rep.worst_ratio);
  r.meta["witness_kind"] = kind_name(rep.witness.kind);
  r.meta["witness_action"] = rep.witness.action;
  r.meta["witness_interval"] = rep.witness.interval;
  if (rep.gap_witness) {
    r.meta["gap_witness"] = ordered_json::array({rep.gap_witness->first, rep.gap_witness->second});
  } else {
    r.meta["gap_witness"] = nullptr;
  }
  r.meta["include_initial"] = rep.include_initial;
  r.meta["final_gap_omitted"] = rep.final_gap_omitted;
  r.columns = {"n", "time", "worst_extra_cost", "ratio"};
  const T kk = Tr::from_rational(Rational(static_cast<long>(k)));
  for (std::size_t n = first; n < snaps.size(); ++n) {
    const auto& s = snaps[n];
    // Longest interval: an infection just before its end costs that much.
    const auto len = intervals(s);
    T cost = len.front();
    for (const auto& l : len) cost = Tr::max(cost, l);
    r.rows.push_back({{"n", n},
                      {"time", dbl(Tr::to_real(s.newest()))},
                      {"worst_extra_cost", dbl(Tr::to_real(cost))},
                      {"ratio", dbl(Tr::to_real(kk * cost / s.newest()))}});
  }
}

template <class T>
void eval_trace(Report& r, const SchemeTrace<T>& trace) {
  r.meta["kind"] = "trace";
  r.meta["k"] = trace.k;
  fill_compliance(r, measured_efficiency(trace), replay(trace), 0, trace.k);
}

template <class T>
void eval_periodic(Report& r, const PeriodicScheme<T>& ps, const Rational& tol) {
  r.meta["kind"] = "periodic";
  r.meta["k"] = ps.k;
  r.meta["m"] = ps.m();
  const auto rep = periodic_efficiency(ps, tol);
  // One period, S_1 .. S_m; S0 is not judged (the scheme is rebased on it).
  fill_compliance(r, rep, replay(unroll(ps, 1)), 1, ps.k);
}

}  // namespace

Report cmd_eval(const RunConfig& cfg) {
  Report r;
  r.command = "eval";
  const auto j = load_json_file(cfg.input);
  r.meta["file"] = cfg.input;
  const Rational tol = rationalize(cfg.tol, mpz_class("1000000000000000"));
  if (looks_like_periodic(j)) {
    const PeriodicSpec spec = periodic_spec_from_json(j);
    if (cfg.mode == Mode::Float) {
      r.meta["mode"] = "float";
      eval_periodic(r, instantiate_float(spec), tol);
    } else if (spec.q_is_root()) {
      // Irrational q: decisions through shrinking enclosures; periodicity
      // can only be confirmed to within tol.
      r.meta["mode"] = "interval";
      with_refinement([&](const Rational& w) {
        Report tmp = r;
        eval_periodic(tmp, instantiate_interval(spec, w), tol);
        r = std::move(tmp);
        return 0;
      });
    } else {
      r.meta["mode"] = "exact";
      eval_periodic(r, instantiate_exact(spec), Rational(0));
    }
  } else if (cfg.mode == Mode::Float) {
    r.meta["mode"] = "float";
    eval_trace(r, trace_from_json_float(j));
  } else {
    r.meta["mode"] = "exact";
    eval_trace(r, trace_from_json_exact(j));
  }
  return r;
}

namespace {

ordered_json d_json(const std::vector<std::size_t>& D) {
  ordered_json a = ordered_json::array();
  for (auto d : D) a.push_back(d);
  return a;
}

lp::BlockingResult run_blocking(const Rational& c, std::size_t k, const RunConfig& cfg) {
  lp::BlockingOptions opt;
  opt.depth_limit = cfg.max_depth;
  opt.lp_budget = cfg.nodes;
  if (cfg.jobs == 1) return lp::find_blocking_set(c, k, opt);
  if (cfg.jobs > 1) omp_set_num_threads(cfg.jobs);
  return lp::find_blocking_set_parallel(c, k, opt);
}

const lp::Table1Row& table1_row(std::size_t k) {
  for (const auto& row : lp::table1()) {
    if (row.k == k) return row;
  }
  throw InvalidInput("table1 covers 2 <= k <= 14");
}

}  // namespace

Report cmd_table1(const RunConfig& cfg) {
  Report r;
  r.command = "table1";
  r.meta["mode"] = cfg.mode == Mode::Exact ? "exact" : "float";
  r.meta["blocking_search"] = cfg.blocking;
  r.columns = {"k", "c", "q", "half_power", "D", "m", "geometric", "blocked", "blocking_size", "c_ref", "q_ref"};
  for (auto k : cfg.ks) (void)table1_row(k);
  for (auto k : cfg.ks) {
    const auto& ref = table1_row(k);
    lp::PeriodicOptions popt;
    popt.tol = cfg.tol;
    const lp::PeriodicFit fit = lp::min_c_periodic(ref.D, k, popt);
    const Real c = cfg.mode == Mode::Exact ? ScalarTraits<Rational>::to_real(fit.c) : fit.c_float;
    const Real q = ScalarTraits<Rational>::to_real(fit.q);
    ordered_json row{{"k", k},
                     {"c", dbl(c)},
                     {"q", dbl(q)},
                     {"half_power", dbl(asymptote_value(c, k))},
                     {"D", d_json(ref.D)},
                     {"m", ref.D.size()},
                     {"geometric", ref.geometric},
                     {"blocked", "-"},
                     {"blocking_size", nullptr},
                     {"c_ref", dbl(ref.c)},
                     {"q_ref", dbl(ref.q)}};
    if (cfg.blocking) {
      const Rational target = fit.c - Rational(1, 100000);
      const auto res = run_blocking(target, k, cfg);
      row["blocked"] = res.status == lp::SearchStatus::Blocking ? "yes"
                       : res.status == lp::SearchStatus::OpenPath ? "no"
                                                                  : "inconclusive";
      if (res.blocking()) row["blocking_size"] = res.witnesses.size();
      if (res.status == lp::SearchStatus::Inconclusive) r.exit_code = kInconclusive;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_tables23(const RunConfig& cfg) {
  if (cfg.table != 2 && cfg.table != 3) throw InvalidInput("--table must be 2 or 3");
  if (cfg.t_lo < 0 || cfg.t_hi < cfg.t_lo || cfg.t_hi > 40) throw InvalidInput("bad t range");
  Report r;
  r.command = "tables23";
  r.meta["table"] = cfg.table;
  r.columns = {"k", "t", "efficiency", "equation", "q_half_power", "eps"};
  std::vector<TableRow> rows;
  if (cfg.jobs == 1) {
    rows = recursive_table_serial(cfg.table, cfg.t_lo, cfg.t_hi);
  } else {
    if (cfg.jobs > 1) omp_set_num_threads(cfg.jobs);
    rows = recursive_table_parallel(cfg.table, cfg.t_lo, cfg.t_hi);
  }
  for (const auto& row : rows) {
    r.rows.push_back({{"k", row.k},
                      {"t", row.t},
                      {"efficiency", dbl(row.efficiency)},
                      {"equation", row.equation},
                      {"q_half_power", dbl(row.q_half_power)},
                      {"eps", row.eps_text}});
  }
  return r;
}

Report cmd_bounds(const RunConfig& cfg) {
  Report r;
  r.command = "bounds";
  r.columns = {"k",      "weak",         "weak_from_even", "strong",     "strong_from_even", "strong_explicit",
               "upper",  "upper_source", "upper_half_power", "sandwich"};
  for (auto k : cfg.ks) {
    if (k < 2) throw InvalidInput("k must be >= 2");
    ordered_json row{{"k", k}};
    if (k >= 3) {
      const auto w = lower_bound_weak(k);
      row["weak"] = dbl(w.value);
      row["weak_from_even"] = w.derived_from_even;
    } else {
      row["weak"] = nullptr;
      row["weak_from_even"] = nullptr;
    }
    const auto s = lower_bound_strong(k);
    row["strong"] = dbl(s.value);
    row["strong_from_even"] = s.derived_from_even;
    row["strong_explicit"] = dbl(lower_bound_strong_explicit(k));
    Real upper = 0;
    if (k <= 14) {
      upper = table1_row(k).c;
      row["upper_source"] = "table1";
    } else {
      upper = table_row(static_cast<std::int64_t>(k)).efficiency;
      row["upper_source"] = "recursive";
    }
    row["upper"] = dbl(upper);
    row["upper_half_power"] = dbl(asymptote_value(upper, k));
    row["sandwich"] = s.value <= upper && upper <= 2;
    // keep the column order of the header
    ordered_json ordered;
    for (const auto& col : r.columns) ordered[col] = row[col];
    r.rows.push_back(std::move(ordered));
  }
  return r;
}

Report cmd_search(const RunConfig& cfg) {
  Report r;
  r.command = "search";
  r.meta["max_len"] = cfg.max_depth;
  r.meta["node_budget"] = cfg.nodes;
  r.columns = {"k", "D", "c", "c_exact", "q", "complete", "nodes", "evaluated"};
  for (auto k : cfg.ks) {
    const auto res = lp::enumerate_sequences(k, cfg.max_depth, cfg.nodes);
    r.rows.push_back({{"k", k},
                      {"D", d_json(res.D)},
                      {"c", dbl(ScalarTraits<Rational>::to_real(res.c))},
                      {"c_exact", format_rational(res.c)},
                      {"q", dbl(ScalarTraits<Rational>::to_real(res.q))},
                      {"complete", res.complete},
                      {"nodes", res.nodes},
                      {"evaluated", res.evaluated}});
    if (!res.complete) r.exit_code = kInconclusive;
  }
  return r;
}

Report cmd_witness_find(const RunConfig& cfg) {
  if (!cfg.c) throw InvalidInput("--c is required");
  if (cfg.ks.size() != 1) throw InvalidInput("witness find takes a single --k");
  if (cfg.mode == Mode::Float) throw InvalidInput("witnesses are certified exactly; --mode float is not supported here");
  const std::size_t k = cfg.ks.front();
  const auto res = run_blocking(*cfg.c, k, cfg);
  Report r;
  r.command = "witness find";
  r.meta["k"] = k;
  r.meta["c"] = format_rational(*cfg.c);
  r.meta["status"] = lp::to_string(res.status);
  r.meta["depth_limit"] = cfg.max_depth;
  r.meta["lp_budget"] = cfg.nodes;
  // Counters are only reported where they do not depend on the schedule.
  if (res.blocking()) {
    r.meta["witnesses"] = res.witnesses.size();
    r.meta["lp_solves"] = res.lp_solves;
    r.meta["max_depth"] = res.max_depth;
  }
  if (res.status == lp::SearchStatus::OpenPath) r.meta["open_path"] = d_json(res.open_path);
  r.columns = {"D", "length", "rows"};
  if (res.blocking()) {
    for (const auto& w : res.witnesses) {
      r.rows.push_back({{"D", d_json(w.D)}, {"length", w.D.size()}, {"rows", w.certificate.entries.size()}});
    }
  }
  if (!cfg.archive.empty()) {
    std::ofstream f(cfg.archive);
    if (!f) throw InvalidInput("cannot write " + cfg.archive);
    lp::write_archive(f, res);
    r.meta["archive"] = cfg.archive;
  }
  if (res.status == lp::SearchStatus::Inconclusive) r.exit_code = kInconclusive;
  return r;
}

Report cmd_witness_verify(const RunConfig& cfg) {
  std::ifstream f(cfg.input);
  if (!f) throw InvalidInput("cannot read " + cfg.input);
  const auto rep = lp::verify_archive(f);
  Report r;
  r.command = "witness verify";
  r.meta["file"] = cfg.input;
  r.meta["entries"] = rep.entries;
  r.meta["valid"] = rep.valid;
  r.meta["covers"] = rep.covers;
  r.meta["ok"] = rep.ok();
  r.columns = {"line", "reason"};
  for (const auto& [line, why] : rep.failures) r.rows.push_back({{"line", line}, {"reason", why}});
  if (!rep.ok()) r.exit_code = kInvalid;
  return r;
}

}  // namespace pebble::cli
