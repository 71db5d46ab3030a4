#include <benchmark/benchmark.h>

#include "accex/fixture.hpp"
#include "accex/whatif.hpp"

namespace {

// A wide random workload; the heaviest function is the sweep target.
struct Workload {
  accex::WhatIfProfile profile;
  std::string target;
};

const Workload& workload() {
  static const Workload w = [] {
    accex::fixture::RandomSpecLimits limits;
    limits.max_functions = 60;
    const auto gen = accex::fixture::generate(accex::fixture::random_workload(5, limits));
    const accex::CallGraph graph = accex::analyze(gen.profile, gen.symbols);
    Workload out{accex::make_whatif_profile(graph, gen.profile.call_groups), {}};
    accex::Rational best = -1;
    for (const accex::Node& n : graph.nodes) {
      if (n.self_time > best) {
        best = n.self_time;
        out.target = n.symbol.name;
      }
    }
    return out;
  }();
  return w;
}

std::vector<accex::Rational> grid(std::int64_t points) {
  std::vector<accex::Rational> out;
  for (std::int64_t i = 0; i < points; ++i) out.emplace_back(i, points - 1);
  return out;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto& w = workload();
  const auto g = grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accex::sweep_serial(w.profile, w.target, g));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto& w = workload();
  const auto g = grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accex::sweep(w.profile, w.target, g));
}

BENCHMARK(BM_SweepSerial)->Arg(21)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(21)->Arg(101)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
