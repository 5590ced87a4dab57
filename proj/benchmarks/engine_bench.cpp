#include <benchmark/benchmark.h>

#include "bench_graphs.hpp"
#include "vcflow/analyses/const_prop.hpp"
#include "vcflow/analyses/lru_cache.hpp"
#include "vcflow/analyses/reaching_defs.hpp"
#include "vcflow/engine.hpp"
#include "vcflow/sequential.hpp"

namespace vcflow {
namespace {

template <class A>
void run_bsp(benchmark::State& state, Algorithm algo) {
  const auto g = bench::random_cfg(static_cast<std::size_t>(state.range(0)), 7);
  EngineConfig cfg;
  cfg.algorithm = algo;
  cfg.workers = static_cast<std::size_t>(state.range(1));
  A a{};
  RunStats last;
  for (auto _ : state) {
    auto r = run_engine(g, a, cfg);
    last = r.stats;
    benchmark::DoNotOptimize(r);
  }
  state.counters["supersteps"] = static_cast<double>(last.supersteps);
  state.counters["gathered"] = static_cast<double>(last.facts_gathered);
  state.counters["evaluations"] = static_cast<double>(last.evaluations);
}

void BM_ReachingDefsClassic(benchmark::State& s) { run_bsp<ReachingDefs>(s, Algorithm::Classic); }
void BM_ReachingDefsOptimized(benchmark::State& s) { run_bsp<ReachingDefs>(s, Algorithm::Optimized); }
void BM_ConstPropOptimized(benchmark::State& s) { run_bsp<ConstProp>(s, Algorithm::Optimized); }
void BM_CacheOptimized(benchmark::State& s) { run_bsp<LruMustCache>(s, Algorithm::Optimized); }

BENCHMARK(BM_ReachingDefsClassic)->ArgsProduct({{256, 1024}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReachingDefsOptimized)->ArgsProduct({{256, 1024}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConstPropOptimized)->ArgsProduct({{256, 1024}, {1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CacheOptimized)->ArgsProduct({{256, 1024}, {1}})->Unit(benchmark::kMillisecond);

void BM_SequentialWorklist(benchmark::State& state) {
  const auto g = bench::random_cfg(static_cast<std::size_t>(state.range(0)), 7);
  ReachingDefs a;
  for (auto _ : state) benchmark::DoNotOptimize(run_sequential(g, a));
}
BENCHMARK(BM_SequentialWorklist)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace vcflow
