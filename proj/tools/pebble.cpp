// pebble: reproduce the tables, evaluate schemes, search for witnesses.
//
// Exit codes: 0 success, 2 invalid input, 3 inconclusive (budget),
// 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace pebble;
using namespace pebble::cli;

int main(int argc, char** argv) {
  CLI::App app{"k-device backup schedules: efficiency, tables, bounds and LP witnesses"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string k_text = "2:9", format = "text", mode = "exact", c_text, tol_text;
  app.add_option("--k", k_text, "k, a range lo:hi, or a list a,b,c");
  app.add_option("--tol", tol_text, "tolerance (default: $PEBBLE_TOL or 1e-9)");
  app.add_option("--mode", mode, "arithmetic: exact|float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--max-depth", cfg.max_depth, "depth limit / maximal tuple length")->check(CLI::PositiveNumber);
  app.add_option("--nodes", cfg.nodes, "LP-solve or node budget")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "threads; 1 = serial reference, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "text|csv|json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", cfg.out, "write the report here instead of stdout");

  auto* eval = app.add_subcommand("eval", "efficiency of a trace or periodic scheme file");
  eval->add_option("file", cfg.input, "JSON trace or periodic scheme")->required();

  auto* t1 = app.add_subcommand("table1", "best periodic schemes for small k from the built-in tuples");
  t1->add_flag("--blocking", cfg.blocking, "also search a blocking set at c - 1e-5");

  auto* t23 = app.add_subcommand("tables23", "recursive scheme B(q*, K*(k)) efficiencies");
  t23->add_option("--table", cfg.table, "2: k = 2^(t+1), 3: k = 2^(t+2) - 1");
  t23->add_option("--t-lo", cfg.t_lo);
  t23->add_option("--t-hi", cfg.t_hi);

  auto* bounds = app.add_subcommand("bounds", "lower bounds next to the best known upper bound");
  auto* search = app.add_subcommand("search", "enumerate device tuples for the best periodic scheme");

  auto* witness = app.add_subcommand("witness", "LP witnesses");
  witness->require_subcommand(1);
  auto* wfind = witness->add_subcommand("find", "search a blocking set of c-witnesses");
  wfind->add_option("--c", c_text, "c as p/q or decimal")->required();
  wfind->add_option("--archive", cfg.archive, "write certificates (JSON lines)");
  auto* wverify = witness->add_subcommand("verify", "re-check an archive in exact arithmetic");
  wverify->add_option("file", cfg.input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }

  Report report;
  try {
    cfg.format = parse_format(format);
    cfg.mode = mode == "float" ? Mode::Float : Mode::Exact;
    cfg.tol = tol_text.empty() ? default_tolerance() : parse_real(tol_text);
    if (!(cfg.tol > 0)) throw InvalidInput("--tol must be positive");
    cfg.ks = parse_k_list(k_text);
    if (!c_text.empty()) cfg.c = parse_rational(c_text);
    if (*eval) {
      report = cmd_eval(cfg);
    } else if (*t1) {
      report = cmd_table1(cfg);
    } else if (*t23) {
      report = cmd_tables23(cfg);
    } else if (*bounds) {
      report = cmd_bounds(cfg);
    } else if (*search) {
      if (app.get_option("--max-depth")->count() == 0) cfg.max_depth = 4;
      if (app.get_option("--nodes")->count() == 0) cfg.nodes = 2000;
      report = cmd_search(cfg);
    } else if (*wfind) {
      report = cmd_witness_find(cfg);
    } else if (*wverify) {
      report = cmd_witness_verify(cfg);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }

  const std::string text = render(report, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << '\n';
      return kInvalid;
    }
    f << text;
  }
  return report.exit_code;
}
