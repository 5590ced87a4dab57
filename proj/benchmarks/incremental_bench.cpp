#include <benchmark/benchmark.h>

#include "bench_graphs.hpp"
#include "vcflow/analyses/reaching_defs.hpp"
#include "vcflow/incremental.hpp"

namespace vcflow {
namespace {

// One subsumed edge added near the head of a long chain: the optimized mode
// reuses every stored fact, the naive mode re-propagates the whole tail.
void chain_update(benchmark::State& state, IncrementalMode mode) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto old_g = bench::def_chain(n);
  const ChangeBatch batch{{ChangeKind::AddEdgeExisting, vid(0), vid(2), {}}};
  const auto new_g = apply_changes(old_g, batch);
  ReachingDefs a;
  auto converged = FactStore::in_memory(store_meta(a));
  save_result(converged, a, old_g, run_optimized(old_g, a, {}));
  std::size_t supersteps = 0;
  for (auto _ : state) {
    state.PauseTiming();
    auto store = converged;
    state.ResumeTiming();
    auto run = run_incremental(new_g, batch, store, a, {}, mode);
    supersteps = run.result.stats.supersteps;
  }
  state.counters["supersteps"] = static_cast<double>(supersteps);
}

void BM_ChainNaive(benchmark::State& s) { chain_update(s, IncrementalMode::Naive); }
void BM_ChainOptimized(benchmark::State& s) { chain_update(s, IncrementalMode::Optimized); }
BENCHMARK(BM_ChainNaive)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainOptimized)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Scratch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = apply_changes(bench::def_chain(n), {{ChangeKind::AddEdgeExisting, vid(0), vid(2), {}}});
  ReachingDefs a;
  for (auto _ : state) {
    auto store = FactStore::in_memory(store_meta(a));
    save_result(store, a, g, run_optimized(g, a, {}));
    benchmark::DoNotOptimize(store);
  }
}
BENCHMARK(BM_Scratch)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace vcflow
