#pragma once

#include <cstdint>
#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "vcflow/engine.hpp"

namespace vcflow::testing {

/// Vertices reachable from the entries, by plain DFS over successors().
inline std::set<VertexId> reached_from_entries(const SuperGraph& g) {
  std::set<VertexId> seen;
  std::vector<VertexId> stack(g.entries().begin(), g.entries().end());
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (auto s : g.successors(v)) stack.push_back(s);
  }
  return seen;
}

/// Round-robin Kleene iteration over all reached vertices until nothing
/// changes.  Shares no code with the worklist solvers.
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> kleene(const SuperGraph& g, const A& a) {
  using Fact = typename A::Fact;
  const auto reached = reached_from_entries(g);
  std::map<VertexId, Fact> in, out;
  for (auto v : g.ids()) {
    in.emplace(v, a.initial());
    out.emplace(v, a.initial());
  }
  const Fact entry = a.entry_fact();
  for (bool changed = true; changed;) {
    changed = false;
    for (auto v : reached) {
      std::vector<const Fact*> ps;
      if (g.is_entry(v)) ps.push_back(&entry);
      for (auto p : g.predecessors(v))
        if (reached.count(p)) ps.push_back(&out.at(p));
      Fact i = a.merge(std::span<const Fact* const>(ps), a.initial());
      Fact o = a.transfer(g.attribute(v).stmts, i);
      if (!(i == in.at(v)) || !(o == out.at(v))) {
        in[v] = std::move(i);
        out[v] = std::move(o);
        changed = true;
      }
    }
  }
  AnalysisResult<Fact> r;
  r.in = std::move(in);
  r.out = std::move(out);
  r.reached = reached;
  return r;
}

/// Meet/join over all paths for an acyclic graph: the merge, over every
/// entry-to-v path, of the facts obtained by transferring along the path.
/// Returns the IN of `target`.
template <DataflowAnalysis A>
typename A::Fact path_merge_in(const SuperGraph& g, const A& a, VertexId target) {
  using Fact = typename A::Fact;
  std::vector<Fact> arriving;
  // DFS over paths; the fact carried is OUT of the last vertex on the path.
  std::function<void(VertexId, Fact)> walk = [&](VertexId v, Fact in_v) {
    if (v == target) arriving.push_back(in_v);
    Fact out_v = a.transfer(g.attribute(v).stmts, in_v);
    for (auto s : g.successors(v)) walk(s, out_v);
  };
  for (auto e : g.entries()) walk(e, a.entry_fact());
  std::vector<const Fact*> ps;
  for (const auto& f : arriving) ps.push_back(&f);
  return a.merge(std::span<const Fact* const>(ps), a.initial());
}

/// Concrete set-associative LRU cache.
class ConcreteLru {
 public:
  ConcreteLru(std::uint32_t sets, std::uint32_t ways) : ways_(ways), sets_(sets) {}

  /// Returns true on a hit.  Most recent block first in each set.
  bool access(std::uint64_t block) {
    auto& set = sets_[block % sets_.size()];
    for (auto it = set.begin(); it != set.end(); ++it)
      if (*it == block) {
        set.erase(it);
        set.push_front(block);
        return true;
      }
    set.push_front(block);
    if (set.size() > ways_) set.pop_back();
    return false;
  }

  bool cached(std::uint64_t block) const {
    const auto& set = sets_[block % sets_.size()];
    return std::find(set.begin(), set.end(), block) != set.end();
  }

  /// Position of the block in its set (its LRU age), or -1.
  int age(std::uint64_t block) const {
    const auto& set = sets_[block % sets_.size()];
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i] == block) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const ConcreteLru&) const = default;
  auto operator<=>(const ConcreteLru& o) const { return sets_ <=> o.sets_; }

 private:
  std::size_t ways_;
  std::vector<std::deque<std::uint64_t>> sets_;
};

}  // namespace vcflow::testing
