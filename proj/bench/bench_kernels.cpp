#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>

#include "json.hpp"
#include "kbg/bogomolov/bogomolov.hpp"
#include "kbg/flags/chains.hpp"
#include "kbg/reps/group.hpp"

namespace {

using kbg::reps::FinGroup;
using kbg::reps::GroupPtr;

void BM_ChainOrbitsSerial(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kbg::flags::chain_orbits_serial(n));
}

void BM_ChainOrbitsParallel(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kbg::flags::chain_orbits_parallel(n));
}

GroupPtr bench_group(int which) {
  if (which == 0) return std::make_shared<FinGroup>(FinGroup::symmetric(5));
  if (which == 1) return std::make_shared<FinGroup>(FinGroup::quaternion(32));
  std::ifstream in(std::string(KBG_DATA_DIR) + "/b0_order64.json");
  auto j = nlohmann::json::parse(in);
  return std::make_shared<FinGroup>(FinGroup::from_json({{"table", j.at("table")}}));
}

void BM_B0Serial(benchmark::State& state) {
  auto g = bench_group(static_cast<int>(state.range(0)));
  state.SetLabel("order " + std::to_string(g->order()));
  for (auto _ : state) benchmark::DoNotOptimize(kbg::bogomolov::b0(g, false));
}

void BM_B0Parallel(benchmark::State& state) {
  auto g = bench_group(static_cast<int>(state.range(0)));
  state.SetLabel("order " + std::to_string(g->order()));
  for (auto _ : state) benchmark::DoNotOptimize(kbg::bogomolov::b0(g, true));
}

void BM_B0Hopf(benchmark::State& state) {
  auto g = bench_group(static_cast<int>(state.range(0)));
  state.SetLabel("order " + std::to_string(g->order()));
  for (auto _ : state) benchmark::DoNotOptimize(kbg::bogomolov::b0_hopf(*g));
}

}  // namespace

BENCHMARK(BM_ChainOrbitsSerial)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainOrbitsParallel)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_B0Serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_B0Parallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_B0Hopf)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
