#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "report.hpp"

using namespace pebble;
using namespace pebble::cli;

namespace {

std::string data(const std::string& name) { return std::string(PEBBLE_DATA_DIR) + "/" + name; }

RunConfig config(std::vector<std::size_t> ks) {
  RunConfig cfg;
  cfg.ks = std::move(ks);
  return cfg;
}

double num(const nlohmann::ordered_json& v) { return v.get<double>(); }

}  // namespace

TEST_CASE("k lists") {
  CHECK(parse_k_list("7") == std::vector<std::size_t>{7});
  CHECK(parse_k_list("2:5") == std::vector<std::size_t>{2, 3, 4, 5});
  CHECK(parse_k_list("3,5,8") == std::vector<std::size_t>{3, 5, 8});
  CHECK_THROWS_AS(parse_k_list("5:2"), InvalidInput);
  CHECK_THROWS_AS(parse_k_list("x"), InvalidInput);
  CHECK_THROWS_AS(parse_k_list(""), InvalidInput);
}

TEST_CASE("tolerance from the environment") {
  ::unsetenv("PEBBLE_TOL");
  CHECK(default_tolerance() == 1e-9L);
  ::setenv("PEBBLE_TOL", "1e-6", 1);
  CHECK(default_tolerance() == doctest::Approx(1e-6));
  ::setenv("PEBBLE_TOL", "-1", 1);
  CHECK_THROWS_AS(default_tolerance(), InvalidInput);
  ::unsetenv("PEBBLE_TOL");
}

TEST_CASE("bounds at k = 8") {
  const auto r = cmd_bounds(config({8}));
  REQUIRE(r.rows.size() == 1);
  const auto& row = r.rows[0];
  CHECK(num(row["weak"]) == doctest::Approx(2 - std::log(2.0) - 1.0 / 6).epsilon(1e-12));
  CHECK(num(row["weak"]) == doctest::Approx(1.14019).epsilon(1e-5));
  CHECK(num(row["strong"]) == doctest::Approx(1.272829).epsilon(1e-6));
  CHECK(num(row["upper"]) == doctest::Approx(1.320138).epsilon(1e-9));
  CHECK(row["upper_source"] == "table1");
  CHECK(row["sandwich"] == true);
  const auto big = cmd_bounds(config({64}));
  CHECK(big.rows[0]["upper_source"] == "recursive");
  CHECK(num(big.rows[0]["upper"]) == doctest::Approx(1.393037798).epsilon(1e-9));
}

TEST_CASE("tables 2 and 3") {
  auto cfg = config({});
  cfg.t_lo = 4;
  cfg.t_hi = 5;
  const auto r = cmd_tables23(cfg);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0]["k"] == 32);
  CHECK(r.rows[1]["k"] == 64);
  CHECK(num(r.rows[1]["efficiency"]) == doctest::Approx(1.393037798).epsilon(1e-9));
  cfg.table = 4;
  CHECK_THROWS_AS(cmd_tables23(cfg), InvalidInput);
}

TEST_CASE("csv column order") {
  auto cfg = config({});
  cfg.t_lo = 0;
  cfg.t_hi = 1;
  const std::string csv = render(cmd_tables23(cfg), Format::Csv);
  CHECK(csv.rfind("k,t,efficiency,equation,q_half_power,eps\n", 0) == 0);
  const std::string b = render(cmd_bounds(config({4})), Format::Csv);
  CHECK(b.rfind("k,weak,weak_from_even,strong,strong_from_even,strong_explicit,upper,upper_source,upper_half_power,"
                "sandwich\n",
                0) == 0);
  const std::string t1 = render(cmd_table1(config({2})), Format::Csv);
  CHECK(t1.rfind("k,c,q,half_power,D,m,geometric,blocked,blocking_size,c_ref,q_ref\n2,1,2,2,(1),1,yes,-,", 0) == 0);
}

TEST_CASE("table 1 rows") {
  const auto r = cmd_table1(config({2, 3, 4, 5}));
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    CHECK(num(row["c"]) == doctest::Approx(num(row["c_ref"])).epsilon(2e-5));
    CHECK(num(row["q"]) == doctest::Approx(num(row["q_ref"])).epsilon(1e-3));
  }
  auto cfg = config({4});
  cfg.blocking = true;
  const auto b = cmd_table1(cfg);
  CHECK(b.rows[0]["blocked"] == "yes");
  CHECK(b.exit_code == kOk);
  CHECK_THROWS_AS(cmd_table1(config({15})), InvalidInput);
}

TEST_CASE("eval of scheme files") {
  auto cfg = config({});
  cfg.input = data("rr3.json");
  CHECK(num(cmd_eval(cfg).meta["c"]) == doctest::Approx(1.145898).epsilon(1e-6));
  cfg.input = data("k5.json");
  CHECK(num(cmd_eval(cfg).meta["c"]) == doctest::Approx(1.225612).epsilon(1e-6));
  cfg.input = data("trace_k3.json");
  const auto t = cmd_eval(cfg);
  CHECK(t.meta["kind"] == "trace");
  cfg.input = data("bad_s0.json");
  CHECK_THROWS_AS(cmd_eval(cfg), InvalidInput);
  cfg.input = data("does_not_exist.json");
  CHECK_THROWS_AS(cmd_eval(cfg), InvalidInput);
}

TEST_CASE("witness find and verify") {
  const auto dir = std::filesystem::temp_directory_path() / "pebble_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "k4.jsonl").string();
  auto cfg = config({4});
  cfg.c = parse_rational("1.2319");
  cfg.archive = path;
  const auto f = cmd_witness_find(cfg);
  CHECK(f.meta["status"] == "blocking");
  CHECK(f.exit_code == kOk);

  auto v = config({});
  v.input = path;
  const auto ok = cmd_witness_verify(v);
  CHECK(ok.meta["ok"] == true);
  CHECK(ok.meta["covers"] == true);
  CHECK(ok.exit_code == kOk);

  // corrupt the last coefficient of the first line
  std::ifstream in(path);
  std::stringstream all;
  all << in.rdbuf();
  std::string text = all.str();
  const auto end = text.find("\"]]");
  REQUIRE(end != std::string::npos);
  text.insert(end, "1");
  const auto bad_path = (dir / "bad.jsonl").string();
  std::ofstream(bad_path) << text;
  v.input = bad_path;
  const auto bad = cmd_witness_verify(v);
  CHECK(bad.meta["ok"] == false);
  CHECK(bad.exit_code == kInvalid);

  auto open = config({4});
  open.c = parse_rational("1.24");
  open.max_depth = 8;
  const auto o = cmd_witness_find(open);
  CHECK(o.meta["status"] == "open_path");
  CHECK(o.meta.contains("open_path"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("search") {
  auto cfg = config({4});
  cfg.max_depth = 2;
  cfg.nodes = 1000;
  const auto r = cmd_search(cfg);
  CHECK(r.rows[0]["D"] == nlohmann::ordered_json::array({1, 3}));
  CHECK(r.exit_code == kOk);
  cfg.nodes = 1;
  CHECK(cmd_search(cfg).exit_code == kInconclusive);
}

TEST_CASE("renderings") {
  Report r;
  r.command = "x";
  r.meta["a"] = 1.5;
  r.columns = {"p", "q"};
  r.rows.push_back({{"q", true}, {"p", "a,b"}});
  CHECK(render(r, Format::Csv) == "p,q\n\"a,b\",yes\n");
  CHECK(render(r, Format::Text) == "a: 1.5\np    q\na,b  yes\n");
  CHECK(nlohmann::json::parse(render(r, Format::Json))["rows"][0]["p"] == "a,b");
  CHECK(parse_format("csv") == Format::Csv);
  CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
}
