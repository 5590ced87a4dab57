#include "vcflow/analyses/reaching_defs.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

#include "vcflow/bytes.hpp"

namespace vcflow {

ReachingDefs::Fact ReachingDefs::merge(std::span<const Fact* const> preds,
                                       const Fact& old_in) const {
  std::vector<Def> acc(old_in.defs.begin(), old_in.defs.end());
  std::vector<Def> next;
  for (const auto* p : preds) {
    if (std::includes(acc.begin(), acc.end(), p->defs.begin(), p->defs.end())) continue;
    next.clear();
    next.reserve(acc.size() + p->defs.size());
    std::set_union(std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()),
                   p->defs.begin(), p->defs.end(), std::back_inserter(next));
    acc.swap(next);
  }
  Fact out;
  out.defs.adopt_sequence(boost::container::ordered_unique_range, std::move(acc));
  return out;
}

ReachingDefs::Fact ReachingDefs::transfer(const Stmts& stmts, const Fact& in) const {
  Fact out = in;
  for (const auto& s : stmts) {
    const auto var = defined_var(s);
    if (var.empty()) continue;
    auto seq = out.defs.extract_sequence();
    std::erase_if(seq, [&](const Def& d) { return d.var == var; });
    out.defs.adopt_sequence(boost::container::ordered_unique_range, std::move(seq));
    std::string id;
    if (const auto* d = std::get_if<stmt::Def>(&s))
      id = d->def_id;
    else if (const auto* c = std::get_if<stmt::AssignConst>(&s))
      id = c->def_id;
    else
      id = std::get<stmt::AssignBinary>(s).def_id;
    out.defs.insert(Def{std::move(id), std::string(var)});
  }
  return out;
}

bool ReachingDefs::less_equal(const Fact& a, const Fact& b) const {
  return std::includes(b.defs.begin(), b.defs.end(), a.defs.begin(), a.defs.end());
}

std::string ReachingDefs::serialize(const Fact& f) const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(f.defs.size()));
  for (const auto& d : f.defs) {
    w.str(d.def_id);
    w.str(d.var);
  }
  return std::move(w).take();
}

ReachingDefs::Fact ReachingDefs::deserialize(std::string_view bytes) const {
  ByteReader r(bytes);
  Fact f;
  const auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    auto id = r.str();
    auto var = r.str();
    f.defs.insert(Def{std::move(id), std::move(var)});
  }
  r.expect_done();
  return f;
}

std::string ReachingDefs::describe(const Fact& f) const {
  std::string s = "{";
  bool first = true;
  for (const auto& d : f.defs) {
    if (!first) s += ",";
    first = false;
    s += d.def_id + "(" + d.var + ")";
  }
  return s + "}";
}

std::size_t ReachingDefs::height_bound(const SuperGraph& g) const {
  std::size_t defs = 0;
  for (const auto& [id, attr] : g.vertices())
    for (const auto& s : attr.stmts)
      if (!defined_var(s).empty()) ++defs;
  return defs + 1;
}

}  // namespace vcflow
