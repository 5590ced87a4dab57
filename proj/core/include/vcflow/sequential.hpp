#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vcflow/engine.hpp"

namespace vcflow {

namespace detail {

template <DataflowAnalysis A, class Pick>
AnalysisResult<typename A::Fact> run_worklist(const SuperGraph& g, const A& a, Pick pick) {
  using Fact = typename A::Fact;
  using Index = SuperGraph::Index;
  const std::size_t n = g.size();
  const Fact initial = a.initial();
  const Fact entry = a.entry_fact();
  std::vector<Fact> in(n, initial);
  std::vector<std::optional<Fact>> out(n);
  std::vector<Index> work;
  std::vector<char> queued(n, 0);
  for (Index i = 0; i < n; ++i)
    if (g.entry_at(i)) {
      work.push_back(i);
      queued[i] = 1;
    }

  const std::size_t cap = 10 * n * height_estimate(a, g);
  RunStats stats;
  std::size_t head = 0;  // work[head..] is pending; pick() chooses the position
  while (head < work.size()) {
    if (stats.evaluations >= cap)
      throw NonConvergence("worklist exceeded " + std::to_string(cap) + " iterations",
                           stats.evaluations);
    const std::size_t pos = pick(head, work.size());
    std::swap(work[head], work[pos]);
    const Index k = work[head++];
    queued[k] = 0;

    std::vector<const Fact*> ps;
    if (g.entry_at(k)) ps.push_back(&entry);
    for (auto p : g.pred_indices(k))
      if (out[p]) ps.push_back(&*out[p]);
    stats.facts_gathered += ps.size();
    in[k] = a.merge(std::span<const Fact* const>(ps), initial);
    Fact fresh = a.transfer(g.stmts_at(k), in[k]);
    ++stats.evaluations;
    if (should_propagate(a, out[k] ? &*out[k] : nullptr, fresh)) {
      ++stats.fact_updates;
      out[k] = std::move(fresh);
      for (auto s : g.succ_indices(k))
        if (!queued[s]) {
          queued[s] = 1;
          work.push_back(s);
        }
    }
    if (head > 4096 && head * 2 > work.size()) {
      work.erase(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }

  AnalysisResult<Fact> r;
  for (Index i = 0; i < n; ++i) {
    const auto v = g.id_at(i);
    r.in.emplace(v, in[i]);
    if (out[i]) r.reached.insert(v);
    r.out.emplace(v, out[i] ? *out[i] : initial);
  }
  r.stats = std::move(stats);
  return r;
}

}  // namespace detail

/// Single-threaded FIFO worklist seeded with the entries.  Throws
/// NonConvergence after 10 * |V| * height_estimate evaluations.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> run_sequential(const SuperGraph& g, const A& a) {
  return detail::run_worklist(g, a, [](std::size_t head, std::size_t) { return head; });
}

/// Same worklist, but each step removes a pending vertex chosen uniformly at
/// random from a generator seeded with `seed`.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> run_chaotic(const SuperGraph& g, const A& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::run_worklist(g, a, [&rng](std::size_t head, std::size_t end) {
    return std::uniform_int_distribution<std::size_t>(head, end - 1)(rng);
  });
}

/// Checks the dataflow equations at every vertex of `r`.  Reached vertices
/// must satisfy IN = merge(entry?, reached preds' OUT) and OUT = transfer(IN);
/// the rest must hold the initial element and have no reached predecessor
/// and no entry status.  Returns a description of the first violation.
template <DataflowAnalysis A>
std::optional<std::string> check_fixed_point(const SuperGraph& g, const A& a,
                                             const AnalysisResult<typename A::Fact>& r) {
  using Fact = typename A::Fact;
  const Fact initial = a.initial();
  const Fact entry = a.entry_fact();
  for (auto v : g.ids()) {
    auto in_it = r.in.find(v);
    auto out_it = r.out.find(v);
    if (in_it == r.in.end() || out_it == r.out.end()) return "vertex " + to_string(v) + " missing";
    std::vector<const Fact*> ps;
    if (g.is_entry(v)) ps.push_back(&entry);
    for (auto p : g.predecessors(v))
      if (r.reached.count(p)) ps.push_back(&r.out.at(p));
    if (!r.reached.count(v)) {
      if (!ps.empty()) return "vertex " + to_string(v) + " has reached inputs but no OUT";
      if (!(in_it->second == initial) || !(out_it->second == initial))
        return "unreached vertex " + to_string(v) + " holds a non-initial fact";
      continue;
    }
    Fact in = a.merge(std::span<const Fact* const>(ps), initial);
    if (!(in == in_it->second))
      return "IN of " + to_string(v) + ": stored " + a.describe(in_it->second) + ", equations give " +
             a.describe(in);
    Fact o = a.transfer(g.attribute(v).stmts, in);
    if (!(o == out_it->second))
      return "OUT of " + to_string(v) + ": stored " + a.describe(out_it->second) +
             ", equations give " + a.describe(o);
  }
  return std::nullopt;
}

/// First difference between two results, checking reachability, then IN,
/// then OUT at each vertex in id order.
struct Divergence {
  VertexId vertex;
  std::string slot;  // "IN", "OUT" or "reached"
  std::string left;
  std::string right;
};

template <DataflowAnalysis A>
std::optional<Divergence> first_divergence(const A& a, const AnalysisResult<typename A::Fact>& x,
                                           const AnalysisResult<typename A::Fact>& y) {
  std::set<VertexId> ids;
  for (const auto& kv : x.in) ids.insert(kv.first);
  for (const auto& kv : y.in) ids.insert(kv.first);
  auto show = [&](const auto& m, VertexId v) {
    auto it = m.find(v);
    return it == m.end() ? std::string("<missing>") : a.describe(it->second);
  };
  for (auto v : ids) {
    const bool rx = x.reached.count(v) != 0, ry = y.reached.count(v) != 0;
    if (rx != ry) return Divergence{v, "reached", rx ? "yes" : "no", ry ? "yes" : "no"};
    auto xi = x.in.find(v), yi = y.in.find(v);
    if (xi == x.in.end() || yi == y.in.end() || !(xi->second == yi->second))
      return Divergence{v, "IN", show(x.in, v), show(y.in, v)};
    auto xo = x.out.find(v), yo = y.out.find(v);
    if (xo == x.out.end() || yo == y.out.end() || !(xo->second == yo->second))
      return Divergence{v, "OUT", show(x.out, v), show(y.out, v)};
  }
  return std::nullopt;
}

}  // namespace vcflow
