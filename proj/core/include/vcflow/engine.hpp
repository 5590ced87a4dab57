#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "vcflow/errors.hpp"
#include "vcflow/graph.hpp"
#include "vcflow/lattice.hpp"

namespace vcflow {

enum class Algorithm { Classic, Optimized };

std::string_view to_string(Algorithm a);

struct EngineConfig {
  std::size_t workers = 1;
  Algorithm algorithm = Algorithm::Optimized;
  /// Defaults to 10 * |V| when unset.
  std::optional<std::size_t> superstep_cap;
  /// Test-only fault: the classic gather silently drops the last predecessor
  /// of every vertex that has at least two.
  bool drop_last_predecessor = false;
};

struct RunStats {
  std::size_t supersteps = 0;
  std::size_t messages_sent = 0;
  std::size_t facts_gathered = 0;  // predecessor facts (classic) or messages (optimized) merged
  std::size_t evaluations = 0;     // merge+transfer invocations
  std::size_t fact_updates = 0;    // OUT publications (propagate == true)
  std::vector<std::size_t> active_per_superstep;
};

/// Final facts for every vertex.  Vertices never reached from an entry (or
/// from a seeded message) keep the initial element in both slots and are
/// absent from `reached`.
template <class Fact>
struct AnalysisResult {
  std::map<VertexId, Fact> in;
  std::map<VertexId, Fact> out;
  std::set<VertexId> reached;
  RunStats stats;
};

template <class Fact>
struct Message {
  VertexId from;
  VertexId to;
  Fact fact;
};

/// Caller-supplied superstep-0 state for seed_and_run.  `in` and `out` must
/// cover exactly the graph's vertices; an empty `out` optional is the
/// never-computed sentinel.  Message targets are activated implicitly;
/// senders may lie outside the graph.
template <class Fact>
struct Seed {
  std::map<VertexId, Fact> in;
  std::map<VertexId, std::optional<Fact>> out;
  std::vector<Message<Fact>> messages;
  std::set<VertexId> active;
};

/// Called on every OUT publication: (superstep, vertex, new OUT).
template <class Fact>
using PublishObserver = std::function<void(std::size_t, VertexId, const Fact&)>;

/// Deterministic owner of a vertex for `workers` partitions.
std::size_t partition_of(VertexId v, std::size_t workers);

namespace detail {

/// Runs fn(p) for every partition, one thread each; rethrows the first
/// failure in partition order after all have finished.
void for_each_partition(std::size_t workers, const std::function<void(std::size_t)>& fn);

template <DataflowAnalysis A>
class Bsp {
 public:
  using Fact = typename A::Fact;
  using Index = SuperGraph::Index;

  Bsp(const SuperGraph& g, const A& a, const EngineConfig& cfg, const PublishObserver<Fact>* obs)
      : g_(g), a_(a), cfg_(cfg), obs_(obs), n_(g.size()) {
    if (cfg.workers == 0) throw Error("engine: worker count must be positive");
    initial_ = a.initial();
    entry_ = a.entry_fact();
    in_.assign(n_, initial_);
    out_.assign(n_, std::nullopt);
    inbox_.assign(n_, {});
    active_.assign(n_, 0);
    members_.assign(cfg.workers, {});
    for (Index i = 0; i < n_; ++i) members_[partition_of(g.id_at(i), cfg.workers)].push_back(i);
  }

  void activate_entries() {
    for (Index i = 0; i < n_; ++i)
      if (g_.entry_at(i)) active_[i] = 1;
  }

  void seed(Seed<Fact> s) {
    if (s.in.size() != n_ || s.out.size() != n_)
      throw SeedMismatch("seed maps do not cover the graph exactly");
    for (auto& [v, f] : s.in) {
      if (!g_.contains(v)) throw SeedMismatch("seed references unknown vertex " + to_string(v));
      in_[g_.index_of(v)] = std::move(f);
    }
    for (auto& [v, f] : s.out) {
      if (!g_.contains(v)) throw SeedMismatch("seed references unknown vertex " + to_string(v));
      out_[g_.index_of(v)] = std::move(f);
    }
    for (auto& m : s.messages) {
      if (!g_.contains(m.to))
        throw SeedMismatch("message targets unknown vertex " + to_string(m.to));
      auto i = g_.index_of(m.to);
      inbox_[i].push_back({m.from, std::make_shared<const Fact>(std::move(m.fact))});
      active_[i] = 1;
    }
    for (auto v : s.active) {
      if (!g_.contains(v)) throw SeedMismatch("seed activates unknown vertex " + to_string(v));
      active_[g_.index_of(v)] = 1;
    }
    for (auto& box : inbox_) sort_inbox(box);
  }

  AnalysisResult<Fact> run() {
    const std::size_t cap = cfg_.superstep_cap.value_or(10 * n_);
    RunStats stats;
    for (;;) {
      std::size_t count = static_cast<std::size_t>(std::count(active_.begin(), active_.end(), 1));
      if (count == 0) break;
      if (stats.supersteps >= cap)
        throw NonConvergence("no fixed point within " + std::to_string(cap) + " supersteps",
                             stats.supersteps);
      stats.active_per_superstep.push_back(count);
      step(stats);
      ++stats.supersteps;
    }
    AnalysisResult<Fact> r;
    for (Index i = 0; i < n_; ++i) {
      const auto v = g_.id_at(i);
      if (out_[i]) {
        r.reached.insert(v);
        r.out.emplace(v, *out_[i]);
      } else {
        r.out.emplace(v, initial_);
      }
      r.in.emplace(v, in_[i]);
    }
    r.stats = std::move(stats);
    return r;
  }

 private:
  // A published fact is shared by every message that carries it.
  using SharedFact = std::shared_ptr<const Fact>;
  struct Inbound {
    VertexId from;
    SharedFact fact;
  };
  struct Outbound {
    Index to;
    VertexId from;
    SharedFact fact;
  };
  struct Local {
    std::vector<Outbound> sent;
    std::vector<std::pair<Index, Fact>> published;  // classic: committed at the barrier
    std::vector<Index> wake;
    std::size_t gathered = 0, evaluations = 0, updates = 0;
  };

  static void sort_inbox(std::vector<Inbound>& box) {
    std::stable_sort(box.begin(), box.end(),
                     [](const Inbound& x, const Inbound& y) { return x.from < y.from; });
  }

  void step(RunStats& stats) {
    std::vector<Local> locals(cfg_.workers);
    const bool classic = cfg_.algorithm == Algorithm::Classic;
    for_each_partition(cfg_.workers, [&](std::size_t p) {
      auto& local = locals[p];
      for (Index k : members_[p]) {
        if (!active_[k]) continue;
        if (classic)
          eval_classic(k, local);
        else
          eval_optimized(k, local);
      }
    });

    // Barrier: commit, deliver, activate.
    std::fill(active_.begin(), active_.end(), 0);
    for (auto& box : inbox_) box.clear();
    for (auto& local : locals) {
      stats.facts_gathered += local.gathered;
      stats.evaluations += local.evaluations;
      stats.fact_updates += local.updates;
      for (auto& [k, f] : local.published) out_[k] = std::move(f);
      for (auto k : local.wake) active_[k] = 1;
      stats.messages_sent += local.sent.size();
      for (auto& m : local.sent) {
        active_[m.to] = 1;
        inbox_[m.to].push_back({m.from, std::move(m.fact)});
      }
    }
    for (auto& box : inbox_) sort_inbox(box);
    ++superstep_;
  }

  void publish(Index k, const Fact& fresh) {
    if (obs_ && *obs_) (*obs_)(superstep_, g_.id_at(k), fresh);
  }

  void eval_classic(Index k, Local& local) {
    std::vector<const Fact*> ps;
    if (g_.entry_at(k)) ps.push_back(&entry_);
    auto preds = g_.pred_indices(k);
    std::size_t take = preds.size();
    if (cfg_.drop_last_predecessor && take >= 2) --take;
    const std::size_t boundary = ps.size();
    for (std::size_t j = 0; j < take; ++j)
      if (const auto& o = out_[preds[j]]) ps.push_back(&*o);
    local.gathered += ps.size() - boundary;
    Fact in = a_.merge(std::span<const Fact* const>(ps), initial_);
    Fact fresh = a_.transfer(g_.stmts_at(k), in);
    ++local.evaluations;
    in_[k] = std::move(in);
    const Fact* old = out_[k] ? &*out_[k] : nullptr;
    if (should_propagate(a_, old, fresh)) {
      ++local.updates;
      publish(k, fresh);
      for (auto s : g_.succ_indices(k)) local.wake.push_back(s);
      local.published.emplace_back(k, std::move(fresh));
    }
  }

  void eval_optimized(Index k, Local& local) {
    std::vector<const Fact*> ps;
    if (g_.entry_at(k)) ps.push_back(&entry_);
    for (const auto& m : inbox_[k]) ps.push_back(m.fact.get());
    local.gathered += inbox_[k].size();
    Fact in = a_.merge(std::span<const Fact* const>(ps), in_[k]);
    Fact fresh = a_.transfer(g_.stmts_at(k), in);
    ++local.evaluations;
    in_[k] = std::move(in);
    const Fact* old = out_[k] ? &*out_[k] : nullptr;
    if (should_propagate(a_, old, fresh)) {
      ++local.updates;
      publish(k, fresh);
      const auto from = g_.id_at(k);
      auto succs = g_.succ_indices(k);
      if (!succs.empty()) {
        auto shared = std::make_shared<const Fact>(fresh);
        for (auto s : succs) local.sent.push_back({s, from, shared});
      }
      out_[k] = std::move(fresh);
    }
  }

  const SuperGraph& g_;
  const A& a_;
  EngineConfig cfg_;
  const PublishObserver<Fact>* obs_;
  std::size_t n_;
  std::size_t superstep_ = 0;
  Fact initial_;
  Fact entry_;
  std::vector<Fact> in_;
  std::vector<std::optional<Fact>> out_;
  std::vector<std::vector<Inbound>> inbox_;
  std::vector<char> active_;
  std::vector<std::vector<Index>> members_;
};

}  // namespace detail

/// Whole-program run with cfg.algorithm; the worklist starts at the entries.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> run_engine(const SuperGraph& g, const A& a,
                                            const EngineConfig& cfg,
                                            const PublishObserver<typename A::Fact>* obs = nullptr) {
  detail::Bsp<A> bsp(g, a, cfg, obs);
  bsp.activate_entries();
  return bsp.run();
}

/// Gather-all worklist: each active vertex re-merges every predecessor's OUT
/// from the previous barrier, starting from the initial element.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> run_classic(const SuperGraph& g, const A& a, EngineConfig cfg,
                                             const PublishObserver<typename A::Fact>* obs = nullptr) {
  cfg.algorithm = Algorithm::Classic;
  return run_engine(g, a, cfg, obs);
}

/// Delta-message worklist: each active vertex merges only the messages it
/// received into its retained IN.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> run_optimized(const SuperGraph& g, const A& a, EngineConfig cfg,
                                               const PublishObserver<typename A::Fact>* obs = nullptr) {
  cfg.algorithm = Algorithm::Optimized;
  return run_engine(g, a, cfg, obs);
}

/// Delta-message run from caller-supplied state.  Throws SeedMismatch.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> seed_and_run(const SuperGraph& g, const A& a, EngineConfig cfg,
                                              Seed<typename A::Fact> seed,
                                              const PublishObserver<typename A::Fact>* obs = nullptr) {
  cfg.algorithm = Algorithm::Optimized;
  detail::Bsp<A> bsp(g, a, cfg, obs);
  bsp.seed(std::move(seed));
  return bsp.run();
}

/// Seed equivalent to a from-scratch run: every vertex initial/unreached,
/// entries active, no messages.
template <DataflowAnalysis A>
Seed<typename A::Fact> scratch_seed(const SuperGraph& g, const A& a) {
  Seed<typename A::Fact> s;
  for (auto v : g.ids()) {
    s.in.emplace(v, a.initial());
    s.out.emplace(v, std::nullopt);
  }
  s.active = g.entries();
  return s;
}

}  // namespace vcflow
