#include "vcflow/graph.hpp"

#include <algorithm>
#include <deque>

#include "text_util.hpp"
#include "vcflow/errors.hpp"

namespace vcflow {

SuperGraph SuperGraph::build(std::map<VertexId, VertexAttribute> vertices, std::set<Edge> edges) {
  SuperGraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  for (const auto& e : g.edges_) {
    if (!g.vertices_.count(e.src))
      throw InvalidGraph("edge " + to_string(e.src) + "->" + to_string(e.dst) +
                         " references unknown vertex " + to_string(e.src));
    if (!g.vertices_.count(e.dst))
      throw InvalidGraph("edge " + to_string(e.src) + "->" + to_string(e.dst) +
                         " references unknown vertex " + to_string(e.dst));
  }
  for (const auto& [id, attr] : g.vertices_)
    if (attr.is_entry) {
      g.entries_.insert(id);
      g.flagged_ = true;
    }
  if (!g.flagged_) {
    std::set<VertexId> has_pred;
    for (const auto& e : g.edges_) has_pred.insert(e.dst);
    for (const auto& [id, attr] : g.vertices_)
      if (!has_pred.count(id)) g.entries_.insert(id);
  }
  g.index();
  return g;
}

SuperGraph SuperGraph::induced(const std::set<VertexId>& keep) const {
  SuperGraph g;
  for (auto v : keep) {
    auto it = vertices_.find(v);
    if (it != vertices_.end()) g.vertices_.emplace(v, it->second);
  }
  for (const auto& e : edges_)
    if (g.vertices_.count(e.src) && g.vertices_.count(e.dst)) g.edges_.insert(e);
  for (auto v : entries_)
    if (g.vertices_.count(v)) g.entries_.insert(v);
  g.flagged_ = flagged_;
  g.index();
  return g;
}

void SuperGraph::index() {
  ids_.clear();
  index_.clear();
  ids_.reserve(vertices_.size());
  for (const auto& entry : vertices_) {
    const auto id = entry.first;
    index_.emplace(id, static_cast<Index>(ids_.size()));
    ids_.push_back(id);
  }
  preds_.assign(ids_.size(), {});
  succs_.assign(ids_.size(), {});
  // edges_ is ordered by (src, dst), so succs come out sorted; preds are
  // sorted afterwards.
  for (const auto& e : edges_) {
    const auto s = index_.at(e.src);
    const auto d = index_.at(e.dst);
    succs_[s].push_back(d);
    preds_[d].push_back(s);
  }
  for (auto& p : preds_) std::sort(p.begin(), p.end());
  entry_at_.assign(ids_.size(), 0);
  for (auto v : entries_) entry_at_[index_.at(v)] = 1;
}

const VertexAttribute& SuperGraph::attribute(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw InvalidGraph("no vertex " + to_string(v));
  return it->second;
}

SuperGraph::Index SuperGraph::index_of(VertexId v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw InvalidGraph("no vertex " + to_string(v));
  return it->second;
}

std::vector<VertexId> SuperGraph::predecessors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto p : preds_[index_of(v)]) out.push_back(ids_[p]);
  return out;
}

std::vector<VertexId> SuperGraph::successors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto s : succs_[index_of(v)]) out.push_back(ids_[s]);
  return out;
}

SuperGraph parse_graph(std::string_view text) {
  std::map<VertexId, VertexAttribute> vertices;
  std::set<Edge> edges;
  std::vector<std::pair<Edge, std::size_t>> edge_lines;

  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    const auto toks = detail::tokens(line);
    const auto kind = toks[0];
    if (kind == "V") {
      if (toks.size() < 3) throw ParseError("expected 'V <id> [entry] <payload>'", no);
      auto id = detail::parse_u64(toks[1]);
      if (!id) throw ParseError("bad vertex id '" + std::string(toks[1]) + "'", no);
      VertexAttribute attr;
      // Payload is everything after the id (and optional entry flag).
      auto rest = line.substr(static_cast<std::size_t>(toks[1].data() + toks[1].size() - line.data()));
      rest = detail::trim(rest);
      if (toks[2] == "entry") {
        attr.is_entry = true;
        rest = detail::trim(rest.substr(5));
      }
      if (rest.empty()) throw ParseError("missing statement payload", no);
      attr.stmts = parse_payload(rest, vid(*id), no);
      if (!vertices.emplace(vid(*id), std::move(attr)).second) throw DuplicateVertex(*id, no);
    } else if (kind == "E") {
      if (toks.size() != 3) throw ParseError("expected 'E <src> <dst>'", no);
      auto s = detail::parse_u64(toks[1]);
      auto d = detail::parse_u64(toks[2]);
      if (!s || !d) throw ParseError("bad edge endpoint", no);
      Edge e{vid(*s), vid(*d)};
      if (!edges.insert(e).second)
        throw ParseError("duplicate edge " + std::to_string(*s) + "->" + std::to_string(*d), no);
      edge_lines.emplace_back(e, no);
    } else {
      throw ParseError("unknown record '" + std::string(kind) + "'", no);
    }
  });

  for (const auto& [e, no] : edge_lines) {
    if (!vertices.count(e.src)) throw UnknownVertex(value_of(e.src), no);
    if (!vertices.count(e.dst)) throw UnknownVertex(value_of(e.dst), no);
  }
  return SuperGraph::build(std::move(vertices), std::move(edges));
}

std::string render_graph(const SuperGraph& g) {
  std::string out;
  for (const auto& [id, attr] : g.vertices()) {
    out += "V " + to_string(id);
    if (attr.is_entry) out += " entry";
    out += " " + render_payload(attr.stmts) + "\n";
  }
  for (const auto& e : g.edges()) out += "E " + to_string(e.src) + " " + to_string(e.dst) + "\n";
  return out;
}

std::set<VertexId> reachable_from(const SuperGraph& g, const std::set<VertexId>& from) {
  std::set<VertexId> seen;
  std::deque<SuperGraph::Index> queue;
  std::vector<char> mark(g.size(), 0);
  for (auto v : from) {
    if (!g.contains(v)) continue;
    auto i = g.index_of(v);
    if (!mark[i]) {
      mark[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    seen.insert(g.id_at(i));
    for (auto s : g.succ_indices(i))
      if (!mark[s]) {
        mark[s] = 1;
        queue.push_back(s);
      }
  }
  return seen;
}

}  // namespace vcflow
