#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vcflow/stmt.hpp"

namespace vcflow {

struct VertexAttribute {
  Stmts stmts;
  bool is_entry = false;  // explicit `entry` flag from the input
  bool operator==(const VertexAttribute&) const = default;
};

struct Edge {
  VertexId src;
  VertexId dst;
  auto operator<=>(const Edge&) const = default;
};

/// Immutable interprocedural CFG (already cloned for context sensitivity).
///
/// Vertices are kept in id order and additionally numbered densely
/// 0..size()-1 in that order; the engines work on dense indices.
/// Entries are the flagged vertices, or every in-degree-0 vertex when no
/// vertex carries the flag.  Self-loops are allowed.
class SuperGraph {
 public:
  using Index = std::uint32_t;

  SuperGraph() = default;

  /// Validates endpoints and resolves the entry set.  Throws InvalidGraph.
  static SuperGraph build(std::map<VertexId, VertexAttribute> vertices, std::set<Edge> edges);

  /// Subgraph induced on `keep` (ids absent from this graph are ignored).
  /// Entry status is inherited from this graph instead of being re-derived,
  /// so the result may have no entries at all.
  SuperGraph induced(const std::set<VertexId>& keep) const;

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::map<VertexId, VertexAttribute>& vertices() const noexcept { return vertices_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  const std::set<VertexId>& entries() const noexcept { return entries_; }

  bool contains(VertexId v) const { return index_.count(v) != 0; }
  bool has_edge(VertexId u, VertexId v) const { return edges_.count(Edge{u, v}) != 0; }
  bool is_entry(VertexId v) const { return entries_.count(v) != 0; }
  const VertexAttribute& attribute(VertexId v) const;

  /// True when at least one vertex carries the explicit entry flag.
  bool has_flagged_entries() const noexcept { return flagged_; }

  Index index_of(VertexId v) const;
  VertexId id_at(Index i) const { return ids_[i]; }
  const std::vector<VertexId>& ids() const noexcept { return ids_; }
  std::span<const Index> pred_indices(Index i) const { return preds_[i]; }
  std::span<const Index> succ_indices(Index i) const { return succs_[i]; }
  bool entry_at(Index i) const { return entry_at_[i] != 0; }
  const Stmts& stmts_at(Index i) const { return vertices_.find(ids_[i])->second.stmts; }

  std::vector<VertexId> predecessors(VertexId v) const;
  std::vector<VertexId> successors(VertexId v) const;

  /// Structural equality: vertices, attributes, edges and entries.
  friend bool operator==(const SuperGraph& a, const SuperGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.entries_ == b.entries_;
  }

 private:
  void index();

  std::map<VertexId, VertexAttribute> vertices_;
  std::set<Edge> edges_;
  std::set<VertexId> entries_;
  bool flagged_ = false;

  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, Index> index_;
  std::vector<std::vector<Index>> preds_;
  std::vector<std::vector<Index>> succs_;
  std::vector<char> entry_at_;
};

/// Parses the line-oriented CFG format:
///   V <id> [entry] <stmt-payload>
///   E <src> <dst>
/// '#' starts a comment.  Throws ParseError / DuplicateVertex / UnknownVertex.
SuperGraph parse_graph(std::string_view text);

/// Canonical rendering (vertices then edges, both in id order).
std::string render_graph(const SuperGraph& g);

/// Vertices reachable from `from` along successor edges (including `from`).
std::set<VertexId> reachable_from(const SuperGraph& g, const std::set<VertexId>& from);

}  // namespace vcflow
