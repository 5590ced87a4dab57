#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "vcflow/engine.hpp"
#include "vcflow/fact_store.hpp"

namespace vcflow {

// Slot encodings on top of the analysis serializer:
//   IN  = u8 flags (bit 0: vertex was an entry) + fact bytes
//   OUT = u8 tag (0: never computed, 1: fact follows) + fact bytes

template <DataflowAnalysis A>
StoreMeta store_meta(const A& a) {
  return StoreMeta{std::string(a.name()), std::string(a.fingerprint())};
}

template <DataflowAnalysis A>
std::string encode_in(const A& a, const typename A::Fact& f, bool entry) {
  std::string s(1, static_cast<char>(entry ? 1 : 0));
  s += a.serialize(f);
  return s;
}

template <DataflowAnalysis A>
std::string encode_out(const A& a, const std::optional<typename A::Fact>& f) {
  if (!f) return std::string(1, '\0');
  std::string s(1, '\1');
  s += a.serialize(*f);
  return s;
}

template <DataflowAnalysis A>
std::pair<typename A::Fact, bool> decode_in(const A& a, std::string_view bytes, VertexId v) {
  if (bytes.empty() || static_cast<unsigned char>(bytes[0]) > 1)
    throw DecodeError("bad IN record for vertex " + to_string(v));
  try {
    return {a.deserialize(bytes.substr(1)), bytes[0] == 1};
  } catch (const DecodeError& e) {
    throw DecodeError("IN of vertex " + to_string(v) + ": " + e.what());
  }
}

template <DataflowAnalysis A>
std::optional<typename A::Fact> decode_out(const A& a, std::string_view bytes, VertexId v) {
  if (bytes.empty() || static_cast<unsigned char>(bytes[0]) > 1)
    throw DecodeError("bad OUT record for vertex " + to_string(v));
  if (bytes[0] == 0) {
    if (bytes.size() != 1) throw DecodeError("bad OUT record for vertex " + to_string(v));
    return std::nullopt;
  }
  try {
    return a.deserialize(bytes.substr(1));
  } catch (const DecodeError& e) {
    throw DecodeError("OUT of vertex " + to_string(v) + ": " + e.what());
  }
}

/// Entry flag of a stored IN record without decoding the fact.
bool stored_entry_flag(const FactStore& store, VertexId v);

/// Store records for the vertices of `g` taken from `r`; entry flags come
/// from `g`.
template <DataflowAnalysis A>
FactStore::Pairs result_pairs(const A& a, const SuperGraph& g,
                              const AnalysisResult<typename A::Fact>& r) {
  FactStore::Pairs pairs;
  pairs.reserve(2 * g.size());
  for (auto v : g.ids()) {
    pairs.emplace_back(StoreKey{v, Slot::In}, encode_in(a, r.in.at(v), g.is_entry(v)));
    std::optional<typename A::Fact> out;
    if (r.reached.count(v)) out = r.out.at(v);
    pairs.emplace_back(StoreKey{v, Slot::Out}, encode_out(a, out));
  }
  return pairs;
}

/// Replaces the store content with a whole-program result.
template <DataflowAnalysis A>
void save_result(FactStore& store, const A& a, const SuperGraph& g,
                 const AnalysisResult<typename A::Fact>& r) {
  store.require(a.fingerprint());
  FactStore::Entries entries;
  for (auto& [k, bytes] : result_pairs(a, g, r)) entries.emplace(k, std::move(bytes));
  store.replace_all(std::move(entries));
}

template <class Fact>
struct StoredFacts {
  std::map<VertexId, Fact> in;
  std::map<VertexId, std::optional<Fact>> out;
  std::set<VertexId> entries;
};

/// Decodes every record.  Throws WrongAnalysis / DecodeError.
template <DataflowAnalysis A>
StoredFacts<typename A::Fact> load_facts(const FactStore& store, const A& a) {
  store.require(a.fingerprint());
  StoredFacts<typename A::Fact> s;
  for (const auto& [key, bytes] : store.entries()) {
    if (key.slot == Slot::In) {
      auto [f, entry] = decode_in(a, bytes, key.vertex);
      s.in.emplace(key.vertex, std::move(f));
      if (entry) s.entries.insert(key.vertex);
    } else {
      s.out.emplace(key.vertex, decode_out(a, bytes, key.vertex));
    }
  }
  return s;
}

/// Rebuilds an AnalysisResult view of the store (unreached OUT = initial).
template <DataflowAnalysis A>
AnalysisResult<typename A::Fact> load_result(const FactStore& store, const A& a) {
  auto s = load_facts(store, a);
  AnalysisResult<typename A::Fact> r;
  r.in = std::move(s.in);
  for (auto& [v, o] : s.out) {
    if (o) r.reached.insert(v);
    r.out.emplace(v, o ? std::move(*o) : a.initial());
  }
  return r;
}

}  // namespace vcflow
