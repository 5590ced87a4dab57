#include "vcflow/changes.hpp"

#include <map>

#include "text_util.hpp"
#include "vcflow/errors.hpp"

namespace vcflow {

std::string_view to_string(ChangeKind k) {
  switch (k) {
    case ChangeKind::AddEdgeExisting: return "AddEdgeExisting";
    case ChangeKind::AddSourceNode: return "AddSourceNode";
    case ChangeKind::AddDestNode: return "AddDestNode";
    case ChangeKind::DeleteEdgeExisting: return "DeleteEdgeExisting";
    case ChangeKind::DeleteSourceNode: return "DeleteSourceNode";
    case ChangeKind::DeleteDestNode: return "DeleteDestNode";
    case ChangeKind::ChangeSourceNode: return "ChangeSourceNode";
    case ChangeKind::ChangeDestNode: return "ChangeDestNode";
  }
  return "?";
}

std::optional<VertexId> AtomicChange::subject() const {
  switch (kind) {
    case ChangeKind::AddSourceNode:
    case ChangeKind::DeleteSourceNode:
    case ChangeKind::ChangeSourceNode: return src;
    case ChangeKind::AddDestNode:
    case ChangeKind::DeleteDestNode:
    case ChangeKind::ChangeDestNode: return dst;
    default: return std::nullopt;
  }
}

std::set<VertexId> added_vertices(const ChangeBatch& batch) {
  std::set<VertexId> out;
  for (const auto& c : batch)
    if (c.kind == ChangeKind::AddSourceNode || c.kind == ChangeKind::AddDestNode)
      out.insert(*c.subject());
  return out;
}

std::set<VertexId> deleted_vertices(const ChangeBatch& batch) {
  std::set<VertexId> out;
  for (const auto& c : batch)
    if (c.kind == ChangeKind::DeleteSourceNode || c.kind == ChangeKind::DeleteDestNode)
      out.insert(*c.subject());
  return out;
}

std::set<Edge> added_edges(const ChangeBatch& batch) {
  std::set<Edge> out;
  for (const auto& c : batch) {
    const bool adds = c.kind == ChangeKind::AddEdgeExisting || c.kind == ChangeKind::AddSourceNode ||
                      c.kind == ChangeKind::AddDestNode;
    if (adds && c.src && c.dst) out.insert(Edge{*c.src, *c.dst});
  }
  return out;
}

namespace {

std::string describe(const AtomicChange& c) {
  std::string s(to_string(c.kind));
  s += "(";
  if (c.src) s += to_string(*c.src);
  s += ",";
  if (c.dst) s += to_string(*c.dst);
  return s + ")";
}

}  // namespace

SuperGraph apply_changes(const SuperGraph& g, const ChangeBatch& batch) {
  auto vertices = g.vertices();
  auto edges = g.edges();
  std::map<VertexId, VertexAttribute> created;
  std::set<VertexId> doomed;

  auto conflict = [](const AtomicChange& c, const std::string& why) {
    throw ChangeConflict(describe(c) + ": " + why);
  };
  auto need = [&](const AtomicChange& c, const std::optional<VertexId>& v, const char* role) {
    if (!v) conflict(c, std::string("missing ") + role);
    return *v;
  };
  auto need_vertex = [&](const AtomicChange& c, VertexId v) {
    if (!vertices.count(v)) conflict(c, "vertex " + to_string(v) + " does not exist");
  };
  auto create = [&](const AtomicChange& c, VertexId v) {
    if (!c.payload) conflict(c, "missing payload");
    if (vertices.count(v)) {
      auto it = created.find(v);
      if (it == created.end() || !(it->second == *c.payload))
        conflict(c, "vertex " + to_string(v) + " already exists");
      return;
    }
    vertices.emplace(v, *c.payload);
    created.emplace(v, *c.payload);
  };
  auto add_edge = [&](const AtomicChange& c, VertexId u, VertexId v) {
    if (!edges.insert(Edge{u, v}).second) conflict(c, "edge already present");
  };
  auto remove_edge = [&](const AtomicChange& c, VertexId u, VertexId v) {
    if (!edges.erase(Edge{u, v})) conflict(c, "edge not present");
  };

  for (const auto& c : batch) {
    switch (c.kind) {
      case ChangeKind::AddEdgeExisting: {
        const auto u = need(c, c.src, "source");
        const auto v = need(c, c.dst, "destination");
        need_vertex(c, u);
        need_vertex(c, v);
        add_edge(c, u, v);
        break;
      }
      case ChangeKind::AddSourceNode: {
        const auto u = need(c, c.src, "source");
        const auto v = need(c, c.dst, "destination");
        create(c, u);
        need_vertex(c, v);
        add_edge(c, u, v);
        break;
      }
      case ChangeKind::AddDestNode: {
        const auto v = need(c, c.dst, "destination");
        create(c, v);
        if (c.src) {
          need_vertex(c, *c.src);
          add_edge(c, *c.src, v);
        }
        break;
      }
      case ChangeKind::DeleteEdgeExisting:
        remove_edge(c, need(c, c.src, "source"), need(c, c.dst, "destination"));
        break;
      case ChangeKind::DeleteSourceNode: {
        const auto u = need(c, c.src, "source");
        const auto v = need(c, c.dst, "destination");
        need_vertex(c, u);
        remove_edge(c, u, v);
        doomed.insert(u);
        break;
      }
      case ChangeKind::DeleteDestNode: {
        const auto v = need(c, c.dst, "destination");
        need_vertex(c, v);
        if (c.src) remove_edge(c, *c.src, v);
        doomed.insert(v);
        break;
      }
      case ChangeKind::ChangeSourceNode:
      case ChangeKind::ChangeDestNode: {
        const auto v = need(c, c.subject(), "vertex");
        need_vertex(c, v);
        if (!c.payload) conflict(c, "missing payload");
        vertices[v] = *c.payload;
        break;
      }
    }
  }

  for (auto v : doomed) vertices.erase(v);
  for (auto it = edges.begin(); it != edges.end();) {
    if (doomed.count(it->src) || doomed.count(it->dst))
      it = edges.erase(it);
    else
      ++it;
  }
  return SuperGraph::build(std::move(vertices), std::move(edges));
}

namespace {

AtomicChange make(ChangeKind k, std::optional<VertexId> src, std::optional<VertexId> dst,
                  std::optional<VertexAttribute> payload = std::nullopt) {
  return AtomicChange{k, src, dst, std::move(payload)};
}

AtomicChange classify_change(VertexId v, const VertexAttribute& attr, const SuperGraph& updated) {
  if (!updated.successors(v).empty())
    return make(ChangeKind::ChangeSourceNode, v, std::nullopt, attr);
  return make(ChangeKind::ChangeDestNode, std::nullopt, v, attr);
}

// Emits the records for a new edge u -> v given which endpoints are new.
// A fully new edge becomes AddDestNode (create v) then AddSourceNode.
void classify_addition(ChangeBatch& out, std::set<VertexId>& created, VertexId u, VertexId v,
                       const VertexAttribute* new_u, const VertexAttribute* new_v) {
  if (!new_u && !new_v) {
    out.push_back(make(ChangeKind::AddEdgeExisting, u, v));
  } else if (new_u && !new_v) {
    out.push_back(make(ChangeKind::AddSourceNode, u, v, *new_u));
    created.insert(u);
  } else if (!new_u && new_v) {
    out.push_back(make(ChangeKind::AddDestNode, u, v, *new_v));
    created.insert(v);
  } else {
    if (!created.count(v)) {
      out.push_back(make(ChangeKind::AddDestNode, std::nullopt, v, *new_v));
      created.insert(v);
    }
    out.push_back(make(ChangeKind::AddSourceNode, u, v, *new_u));
    created.insert(u);
  }
}

}  // namespace

ChangeBatch diff_graphs(const SuperGraph& old, const SuperGraph& updated) {
  std::set<VertexId> gone;
  std::map<VertexId, const VertexAttribute*> fresh;
  for (const auto& [id, attr] : old.vertices())
    if (!updated.contains(id)) gone.insert(id);
  for (const auto& [id, attr] : updated.vertices())
    if (!old.contains(id)) fresh.emplace(id, &attr);

  ChangeBatch out;
  for (const auto& e : old.edges())
    if (!gone.count(e.src) && !gone.count(e.dst) && !updated.has_edge(e.src, e.dst))
      out.push_back(make(ChangeKind::DeleteEdgeExisting, e.src, e.dst));

  for (auto x : gone) {
    bool marked = false;
    for (auto v : old.successors(x)) {
      out.push_back(make(ChangeKind::DeleteSourceNode, x, v));
      marked = true;
    }
    for (auto p : old.predecessors(x)) {
      if (gone.count(p)) continue;
      out.push_back(make(ChangeKind::DeleteDestNode, p, x));
      marked = true;
    }
    if (!marked) out.push_back(make(ChangeKind::DeleteDestNode, std::nullopt, x));
  }

  for (const auto& [id, attr] : updated.vertices())
    if (old.contains(id) && !(old.attribute(id) == attr))
      out.push_back(classify_change(id, attr, updated));

  std::set<VertexId> created;
  for (const auto& e : updated.edges()) {
    if (old.has_edge(e.src, e.dst)) continue;
    auto nu = fresh.find(e.src);
    auto nv = fresh.find(e.dst);
    classify_addition(out, created, e.src, e.dst, nu == fresh.end() ? nullptr : nu->second,
                      nv == fresh.end() ? nullptr : nv->second);
  }
  for (const auto& [id, attr] : fresh)
    if (!created.count(id)) out.push_back(make(ChangeKind::AddDestNode, std::nullopt, id, *attr));
  return out;
}

namespace {

struct Line {
  std::string op;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::string payload;
  std::size_t no = 0;
};

}  // namespace

ChangeBatch parse_changes(std::string_view text, const SuperGraph& updated) {
  std::vector<Line> lines;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    const auto toks = detail::tokens(line);
    Line l;
    l.op = std::string(toks[0]);
    l.no = no;
    auto id_at = [&](std::size_t i) {
      if (i >= toks.size()) throw ParseError("missing vertex id", no);
      auto v = detail::parse_u64(toks[i]);
      if (!v) throw ParseError("bad vertex id '" + std::string(toks[i]) + "'", no);
      return *v;
    };
    if (l.op == "AE" || l.op == "DE") {
      if (toks.size() != 3) throw ParseError("expected '" + l.op + " <u> <v>'", no);
      l.a = id_at(1);
      l.b = id_at(2);
    } else if (l.op == "DN") {
      if (toks.size() != 2) throw ParseError("expected 'DN <id>'", no);
      l.a = id_at(1);
    } else if (l.op == "AN" || l.op == "CN") {
      if (toks.size() < 3) throw ParseError("expected '" + l.op + " <id> <payload>'", no);
      l.a = id_at(1);
      auto rest = line.substr(static_cast<std::size_t>(toks[1].data() + toks[1].size() - line.data()));
      l.payload = std::string(detail::trim(rest));
    } else {
      throw ParseError("unknown change record '" + l.op + "'", no);
    }
    lines.push_back(std::move(l));
  });

  std::set<VertexId> doomed;
  std::map<VertexId, VertexAttribute> fresh;
  for (const auto& l : lines) {
    if (l.op == "DN") doomed.insert(vid(l.a));
    if (l.op == "AN") {
      VertexAttribute attr;
      std::string_view payload = l.payload;
      // An added vertex may carry the entry flag like a 'V' line.
      if (payload.substr(0, 6) == "entry ") {
        attr.is_entry = true;
        payload = detail::trim(payload.substr(6));
      }
      attr.stmts = parse_payload(payload, vid(l.a), l.no);
      if (!fresh.emplace(vid(l.a), std::move(attr)).second)
        throw ParseError("vertex " + std::to_string(l.a) + " added twice", l.no);
    }
  }

  // Vertices whose deletion / creation is already carried by an edge record.
  std::set<VertexId> marked;
  std::set<VertexId> created_by_edge;
  for (const auto& l : lines) {
    if (l.op == "DE") {
      if (doomed.count(vid(l.a)))
        marked.insert(vid(l.a));
      else if (doomed.count(vid(l.b)))
        marked.insert(vid(l.b));
    }
    if (l.op == "AE") {
      if (fresh.count(vid(l.a))) created_by_edge.insert(vid(l.a));
      if (fresh.count(vid(l.b))) created_by_edge.insert(vid(l.b));
    }
  }

  ChangeBatch out;
  std::set<VertexId> created;
  for (const auto& l : lines) {
    const auto a = vid(l.a);
    const auto b = vid(l.b);
    if (l.op == "DE") {
      if (doomed.count(a))
        out.push_back(make(ChangeKind::DeleteSourceNode, a, b));
      else if (doomed.count(b))
        out.push_back(make(ChangeKind::DeleteDestNode, a, b));
      else
        out.push_back(make(ChangeKind::DeleteEdgeExisting, a, b));
    } else if (l.op == "DN") {
      if (!marked.count(a)) out.push_back(make(ChangeKind::DeleteDestNode, std::nullopt, a));
    } else if (l.op == "CN") {
      if (!updated.contains(a))
        throw ParseError("changed vertex " + std::to_string(l.a) + " absent from updated graph",
                         l.no);
      std::string_view payload = l.payload;
      VertexAttribute attr;
      if (payload.substr(0, 6) == "entry ") {
        attr.is_entry = true;
        payload = detail::trim(payload.substr(6));
      }
      attr.stmts = parse_payload(payload, a, l.no);
      out.push_back(classify_change(a, attr, updated));
    } else if (l.op == "AN") {
      if (!created_by_edge.count(a)) {
        out.push_back(make(ChangeKind::AddDestNode, std::nullopt, a, fresh.at(a)));
        created.insert(a);
      }
    } else if (l.op == "AE") {
      auto nu = fresh.find(a);
      auto nv = fresh.find(b);
      classify_addition(out, created, a, b, nu == fresh.end() ? nullptr : &nu->second,
                        nv == fresh.end() ? nullptr : &nv->second);
    }
  }
  return out;
}

namespace {

std::string render_attr(const VertexAttribute& attr) {
  return (attr.is_entry ? "entry " : "") + render_payload(attr.stmts);
}

}  // namespace

std::string render_changes(const ChangeBatch& batch) {
  std::string out;
  std::set<VertexId> announced;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  auto edge = [](const char* op, VertexId u, VertexId v) {
    return std::string(op) + " " + to_string(u) + " " + to_string(v);
  };
  for (const auto& c : batch) {
    switch (c.kind) {
      case ChangeKind::DeleteEdgeExisting: line(edge("DE", *c.src, *c.dst)); break;
      case ChangeKind::DeleteSourceNode:
      case ChangeKind::DeleteDestNode: {
        if (c.src && c.dst) line(edge("DE", *c.src, *c.dst));
        const auto x = *c.subject();
        if (announced.insert(x).second) line("DN " + to_string(x));
        break;
      }
      case ChangeKind::ChangeSourceNode:
      case ChangeKind::ChangeDestNode:
        line("CN " + to_string(*c.subject()) + " " + render_attr(*c.payload));
        break;
      case ChangeKind::AddSourceNode:
      case ChangeKind::AddDestNode: {
        const auto x = *c.subject();
        if (announced.insert(x).second) line("AN " + to_string(x) + " " + render_attr(*c.payload));
        if (c.src && c.dst) line(edge("AE", *c.src, *c.dst));
        break;
      }
      case ChangeKind::AddEdgeExisting: line(edge("AE", *c.src, *c.dst)); break;
    }
  }
  return out;
}

}  // namespace vcflow
