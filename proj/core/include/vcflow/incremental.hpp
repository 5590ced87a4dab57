#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "vcflow/changes.hpp"
#include "vcflow/engine.hpp"
#include "vcflow/fact_store.hpp"
#include "vcflow/store_codec.hpp"

namespace vcflow {

enum class IncrementalMode { Naive, Optimized };

std::string_view to_string(IncrementalMode m);

/// Vertices directly touched by a batch, split by the kind of edit.
struct AffectedSets {
  std::set<VertexId> add;
  std::set<VertexId> del;
  std::set<VertexId> change;
  std::set<VertexId> all() const;
  bool operator==(const AffectedSets&) const = default;
};

/// Initial affected vertices of each record: AddEdgeExisting {v},
/// AddSourceNode {u,v}, AddDestNode {v}, DeleteEdgeExisting {v},
/// DeleteSourceNode {v}, DeleteDestNode {}, ChangeSourceNode {u},
/// ChangeDestNode {v}.  Vertices deleted by the batch are dropped.
std::set<VertexId> seed_affected(const ChangeBatch& batch);
AffectedSets seed_affected_by_kind(const ChangeBatch& batch);

/// Successor closure of `seed` in `g`, computed as an engine job.  Seeds
/// outside `g` are ignored.
std::set<VertexId> transitive_closure(const std::set<VertexId>& seed, const SuperGraph& g,
                                      const EngineConfig& cfg = {});

/// The three closures in one engine job (a 3-bit label per vertex).
AffectedSets transitive_closure_by_kind(const AffectedSets& seeds, const SuperGraph& g,
                                        const EngineConfig& cfg = {});

struct ImpactResult {
  IncrementalMode mode = IncrementalMode::Naive;
  std::set<VertexId> affected;  // A
  AffectedSets by_kind;         // A_add, A_delete, A_change (optimized only)
  std::set<VertexId> reuse;     // A_add - A_delete - A_change - added vertices (optimized only)
  std::set<VertexId> deleted;
  std::set<VertexId> entry_drift;  // survivors whose entry status changed
  SuperGraph sub;               // induced on A in the updated graph
  /// For each affected k, the predecessors whose stored OUT seeds a
  /// message to k.
  std::map<VertexId, std::set<VertexId>> boundary_preds;
};

/// Impact analysis on the updated graph.  `was_entry` reports the entry
/// status a surviving vertex had when its facts were stored; it is asked
/// only about in-degree-0 vertices of `g_new`, and a changed answer makes
/// the vertex a change seed.  Pass nullptr to skip that check.
ImpactResult analyze_impact(const SuperGraph& g_new, const ChangeBatch& batch, IncrementalMode mode,
                            const std::function<bool(VertexId)>& was_entry = nullptr,
                            const EngineConfig& cfg = {});

template <class Fact>
struct IncrementalRun {
  ImpactResult impact;
  bool ran = false;  // false for an empty batch
  AnalysisResult<Fact> result;  // facts on impact.sub
};

/// Updates `store` (holding converged facts for the old graph) to the fixed
/// point of `g_new`.  Affected vertices are recomputed on the sub-CFG from
/// reset or (optimized mode) reused facts plus boundary messages read from
/// the store; unaffected records are left alone and deleted vertices are
/// purged, all in one commit.  Throws StoreInconsistent, WrongAnalysis,
/// NonConvergence.
template <DataflowAnalysis A>
IncrementalRun<typename A::Fact> run_incremental(const SuperGraph& g_new, const ChangeBatch& batch,
                                                 FactStore& store, const A& a,
                                                 const EngineConfig& cfg, IncrementalMode mode) {
  using Fact = typename A::Fact;
  store.require(a.fingerprint());
  IncrementalRun<Fact> run;
  if (batch.empty()) return run;

  run.impact = analyze_impact(
      g_new, batch, mode, [&](VertexId v) { return stored_entry_flag(store, v); }, cfg);
  const auto& impact = run.impact;

  auto stored_out = [&](VertexId p) -> std::optional<Fact> {
    auto bytes = store.get(StoreKey{p, Slot::Out});
    if (!bytes) throw StoreInconsistent("no stored OUT for vertex " + to_string(p));
    return decode_out(a, *bytes, p);
  };

  Seed<Fact> seed;
  for (auto v : impact.sub.ids()) {
    if (impact.reuse.count(v)) {
      auto bytes = store.get(StoreKey{v, Slot::In});
      if (!bytes) throw StoreInconsistent("no stored IN for vertex " + to_string(v));
      seed.in.emplace(v, decode_in(a, *bytes, v).first);
      seed.out.emplace(v, stored_out(v));
    } else {
      seed.in.emplace(v, a.initial());
      seed.out.emplace(v, std::nullopt);
      if (g_new.is_entry(v)) seed.active.insert(v);
    }
  }
  for (const auto& [k, preds] : impact.boundary_preds)
    for (auto p : preds)
      if (auto f = stored_out(p)) seed.messages.push_back({p, k, std::move(*f)});

  run.result = seed_and_run(impact.sub, a, cfg, std::move(seed));
  run.ran = true;
  store.commit(result_pairs(a, impact.sub, run.result), impact.deleted);
  return run;
}

}  // namespace vcflow
