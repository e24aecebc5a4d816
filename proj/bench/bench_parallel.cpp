// Serial reference vs OpenMP kernels. On a single core the parallel
// variants mostly measure their overhead; thread count is the Arg.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pebble/lp/search.hpp"
#include "pebble/lp/table1.hpp"
#include "pebble/recursive.hpp"

using namespace pebble;

namespace {

Rational below_c(std::size_t k) {
  return rationalize(lp::table1()[k - 2].c, mpz_class(1000000)) - Rational(1, 100000);
}

void BM_BlockingSerial(benchmark::State& st) {
  const auto k = static_cast<std::size_t>(st.range(0));
  const Rational c = below_c(k);
  std::size_t solves = 0;
  for (auto _ : st) {
    auto res = lp::find_blocking_set(c, k);
    solves = res.lp_solves;
    benchmark::DoNotOptimize(res);
  }
  st.counters["lp_solves"] = static_cast<double>(solves);
}

void BM_BlockingParallel(benchmark::State& st) {
  const auto k = static_cast<std::size_t>(st.range(0));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  const Rational c = below_c(k);
  for (auto _ : st) {
    auto res = lp::find_blocking_set_parallel(c, k);
    benchmark::DoNotOptimize(res);
  }
}

void BM_TableSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(recursive_table_serial(2, 0, 17));
}

void BM_TableParallel(benchmark::State& st) {
  omp_set_num_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(recursive_table_parallel(2, 0, 17));
}

}  // namespace

BENCHMARK(BM_BlockingSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockingParallel)->Args({5, 1})->Args({5, 4})->Args({6, 1})->Args({6, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
