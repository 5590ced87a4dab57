#include "vcflow/incremental.hpp"

#include <cstdint>

namespace vcflow {

namespace {

constexpr std::uint8_t kAdd = 1, kDel = 2, kChange = 4;

// Reachability labels: OR-merge, identity transfer.  Running it from the
// seeds marks every vertex reachable from a seed with the union of the
// seeds' bits.
struct ReachLabels {
  struct Fact {
    std::uint8_t bits = 0;
    bool operator==(const Fact&) const = default;
  };
  std::string name() const { return "labels"; }
  std::string fingerprint() const { return "labels/increasing/v1"; }
  Direction direction() const { return Direction::Increasing; }
  Fact initial() const { return {}; }
  Fact entry_fact() const { return {}; }
  Fact merge(std::span<const Fact* const> ps, const Fact& old) const {
    Fact out = old;
    for (const auto* p : ps) out.bits |= p->bits;
    return out;
  }
  Fact transfer(const Stmts&, const Fact& in) const { return in; }
  bool less_equal(const Fact& a, const Fact& b) const { return (a.bits & ~b.bits) == 0; }
  std::string serialize(const Fact& f) const { return std::string(1, static_cast<char>(f.bits)); }
  Fact deserialize(std::string_view b) const {
    if (b.size() != 1) throw DecodeError("labels: expected one byte");
    return Fact{static_cast<std::uint8_t>(b[0])};
  }
  std::string describe(const Fact& f) const { return std::to_string(f.bits); }
};
static_assert(DataflowAnalysis<ReachLabels>);

std::map<VertexId, std::uint8_t> label_closure(const std::map<VertexId, std::uint8_t>& seeds,
                                               const SuperGraph& g, const EngineConfig& cfg) {
  ReachLabels labels;
  Seed<ReachLabels::Fact> seed;
  for (auto v : g.ids()) {
    seed.in.emplace(v, ReachLabels::Fact{});
    seed.out.emplace(v, std::nullopt);
  }
  for (auto [v, bits] : seeds) {
    if (!g.contains(v)) continue;
    seed.in[v].bits |= bits;
    seed.active.insert(v);
  }
  auto r = seed_and_run(g, labels, cfg, std::move(seed));
  std::map<VertexId, std::uint8_t> out;
  for (auto v : r.reached)
    if (auto bits = r.out.at(v).bits) out.emplace(v, bits);
  return out;
}

}  // namespace

std::string_view to_string(IncrementalMode m) {
  return m == IncrementalMode::Naive ? "naive" : "opt";
}

std::set<VertexId> AffectedSets::all() const {
  std::set<VertexId> out = add;
  out.insert(del.begin(), del.end());
  out.insert(change.begin(), change.end());
  return out;
}

AffectedSets seed_affected_by_kind(const ChangeBatch& batch) {
  AffectedSets s;
  for (const auto& c : batch) {
    switch (c.kind) {
      case ChangeKind::AddEdgeExisting:
      case ChangeKind::AddDestNode: s.add.insert(*c.dst); break;
      case ChangeKind::AddSourceNode:
        s.add.insert(*c.src);
        s.add.insert(*c.dst);
        break;
      case ChangeKind::DeleteEdgeExisting:
      case ChangeKind::DeleteSourceNode: s.del.insert(*c.dst); break;
      case ChangeKind::DeleteDestNode: break;
      case ChangeKind::ChangeSourceNode:
      case ChangeKind::ChangeDestNode: s.change.insert(*c.subject()); break;
    }
  }
  for (auto v : deleted_vertices(batch)) {
    s.add.erase(v);
    s.del.erase(v);
    s.change.erase(v);
  }
  return s;
}

std::set<VertexId> seed_affected(const ChangeBatch& batch) {
  return seed_affected_by_kind(batch).all();
}

std::set<VertexId> transitive_closure(const std::set<VertexId>& seed, const SuperGraph& g,
                                      const EngineConfig& cfg) {
  std::map<VertexId, std::uint8_t> labelled;
  for (auto v : seed) labelled.emplace(v, kAdd);
  std::set<VertexId> out;
  for (const auto& kv : label_closure(labelled, g, cfg)) out.insert(kv.first);
  return out;
}

AffectedSets transitive_closure_by_kind(const AffectedSets& seeds, const SuperGraph& g,
                                        const EngineConfig& cfg) {
  std::map<VertexId, std::uint8_t> labelled;
  for (auto v : seeds.add) labelled[v] |= kAdd;
  for (auto v : seeds.del) labelled[v] |= kDel;
  for (auto v : seeds.change) labelled[v] |= kChange;
  AffectedSets out;
  for (auto [v, bits] : label_closure(labelled, g, cfg)) {
    if (bits & kAdd) out.add.insert(v);
    if (bits & kDel) out.del.insert(v);
    if (bits & kChange) out.change.insert(v);
  }
  return out;
}

ImpactResult analyze_impact(const SuperGraph& g_new, const ChangeBatch& batch, IncrementalMode mode,
                            const std::function<bool(VertexId)>& was_entry,
                            const EngineConfig& cfg) {
  ImpactResult r;
  r.mode = mode;
  r.deleted = deleted_vertices(batch);
  const auto added = added_vertices(batch);
  const auto new_edges = added_edges(batch);

  AffectedSets seeds = seed_affected_by_kind(batch);
  if (was_entry) {
    // Entry status can only move where in-degree changed (edge seeds) or
    // where it is decided by the flagged/unflagged mode (in-degree 0).
    std::set<VertexId> candidates = seeds.all();
    for (SuperGraph::Index i = 0; i < g_new.size(); ++i)
      if (g_new.pred_indices(i).empty()) candidates.insert(g_new.id_at(i));
    for (auto v : candidates) {
      if (added.count(v) || r.deleted.count(v) || !g_new.contains(v)) continue;
      if (was_entry(v) != g_new.is_entry(v)) {
        r.entry_drift.insert(v);
        seeds.change.insert(v);
      }
    }
  }

  if (mode == IncrementalMode::Naive) {
    r.affected = transitive_closure(seeds.all(), g_new, cfg);
  } else {
    r.by_kind = transitive_closure_by_kind(seeds, g_new, cfg);
    r.affected = r.by_kind.all();
    for (auto v : r.by_kind.add)
      if (!r.by_kind.del.count(v) && !r.by_kind.change.count(v) && !added.count(v))
        r.reuse.insert(v);
  }
  r.sub = g_new.induced(r.affected);

  for (auto k : r.affected) {
    const bool reused = r.reuse.count(k) != 0;
    for (auto p : g_new.predecessors(k)) {
      const bool inside = r.affected.count(p) != 0;
      bool seeds_message;
      if (mode == IncrementalMode::Naive)
        seeds_message = !inside;
      else if (inside && !r.reuse.count(p))
        seeds_message = false;  // reset predecessor sends once recomputed
      else
        seeds_message = !reused || new_edges.count(Edge{p, k}) != 0;
      if (seeds_message) r.boundary_preds[k].insert(p);
    }
  }
  return r;
}

}  // namespace vcflow
