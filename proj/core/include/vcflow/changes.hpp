#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vcflow/graph.hpp"

namespace vcflow {

/// The eight minimal CFG edits.  "Source"/"Dest" name the role the added,
/// deleted or changed vertex plays on the edge the record describes.
enum class ChangeKind {
  AddEdgeExisting,     // u -> v, both already present
  AddSourceNode,       // new u, edge u -> v
  AddDestNode,         // new v, edge u -> v (u absent: isolated new vertex)
  DeleteEdgeExisting,  // u -> v removed, both survive
  DeleteSourceNode,    // u removed together with u -> v
  DeleteDestNode,      // v removed together with u -> v (u absent: no edge)
  ChangeSourceNode,    // u's statements changed, u has successors
  ChangeDestNode,      // v's statements changed, v has no successors
};

std::string_view to_string(ChangeKind k);

/// One atomic edit.  Which fields are meaningful depends on `kind`; see
/// ChangeKind.  `payload` carries the attribute of an added or changed vertex.
struct AtomicChange {
  ChangeKind kind{};
  std::optional<VertexId> src;
  std::optional<VertexId> dst;
  std::optional<VertexAttribute> payload;

  bool operator==(const AtomicChange&) const = default;

  /// The vertex this record adds, deletes or changes, if any.
  std::optional<VertexId> subject() const;
};

using ChangeBatch = std::vector<AtomicChange>;

/// Vertices created by `batch` (AddSourceNode.src, AddDestNode.dst).
std::set<VertexId> added_vertices(const ChangeBatch& batch);

/// Vertices removed by `batch` (DeleteSourceNode.src, DeleteDestNode.dst).
std::set<VertexId> deleted_vertices(const ChangeBatch& batch);

/// Edges inserted by `batch`.
std::set<Edge> added_edges(const ChangeBatch& batch);

/// Applies `batch` in order.  Deleted vertices are removed at the end along
/// with every remaining incident edge; entries are re-derived.
/// Throws ChangeConflict for an inapplicable record.
SuperGraph apply_changes(const SuperGraph& g, const ChangeBatch& batch);

/// Classifies the difference between two versions into atomic changes.
/// Order: edge deletions, vertex deletions, changes, edge additions, then
/// isolated new vertices.  apply_changes(old, result) == updated.
ChangeBatch diff_graphs(const SuperGraph& old, const SuperGraph& updated);

/// Parses the change file format:
///   AE <u> <v> | AN <id> <payload> | DE <u> <v> | DN <id> | CN <id> <payload>
/// Records are classified into ChangeKind using the batch itself; `updated`
/// (the post-change graph) decides ChangeSourceNode versus ChangeDestNode.
ChangeBatch parse_changes(std::string_view text, const SuperGraph& updated);

/// Renders a batch so that parse_changes(render_changes(b), updated) == b
/// for every batch produced by diff_graphs.
std::string render_changes(const ChangeBatch& batch);

}  // namespace vcflow
