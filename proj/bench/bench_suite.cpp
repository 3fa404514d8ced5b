// Parallel trial loop against the serial reference on the same configuration.

#include <benchmark/benchmark.h>

#include <sstream>

#include "opineq/suite.hpp"

namespace {

opineq::RunConfig config(int trials) {
  opineq::RunConfig cfg;
  cfg.trials = trials;
  cfg.seed = 7;
  for (const opineq::CheckInfo& c : opineq::check_registry()) cfg.checks.emplace_back(c.name);
  return cfg;
}

void BM_Parallel(benchmark::State& state) {
  const opineq::RunConfig cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::ostringstream out;
    benchmark::DoNotOptimize(opineq::run_suite(cfg, &out));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Serial(benchmark::State& state) {
  const opineq::RunConfig cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::ostringstream out;
    benchmark::DoNotOptimize(opineq::run_suite_serial(cfg, &out));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Parallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Serial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
