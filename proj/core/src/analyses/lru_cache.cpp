#include "vcflow/analyses/lru_cache.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "vcflow/bytes.hpp"
#include "vcflow/errors.hpp"

namespace vcflow {

LruMustCache::LruMustCache(std::uint32_t sets, std::uint32_t assoc) : sets_(sets), assoc_(assoc) {
  if (sets == 0 || assoc == 0)
    throw AnalysisDefinitionError("cache geometry needs at least one set and one way");
}

std::string LruMustCache::fingerprint() const {
  return "cache/decreasing/sets=" + std::to_string(sets_) + "/assoc=" + std::to_string(assoc_) +
         "/v1";
}

LruMustCache::Fact LruMustCache::entry_fact() const { return Fact{false, std::vector<Set>(sets_)}; }

namespace {

LruMustCache::Set meet_set(const LruMustCache::Set& a, const LruMustCache::Set& b) {
  LruMustCache::Set out;
  for (const auto& [block, age] : a) {
    auto it = b.find(block);
    if (it != b.end()) out.emplace(block, std::max(age, it->second));
  }
  return out;
}

}  // namespace

LruMustCache::Fact LruMustCache::merge(std::span<const Fact* const> preds,
                                       const Fact& old_in) const {
  Fact out = old_in;
  for (const auto* p : preds) {
    if (p->unreached) continue;
    if (out.unreached) {
      out = *p;
      continue;
    }
    for (std::uint32_t s = 0; s < sets_; ++s) out.sets[s] = meet_set(out.sets[s], p->sets[s]);
  }
  return out;
}

LruMustCache::Fact LruMustCache::access(const Fact& in, std::uint64_t block) const {
  Fact out = in;
  auto& set = out.sets[block % sets_];
  std::optional<std::uint32_t> old_age;
  if (auto it = set.find(block); it != set.end()) old_age = it->second;
  for (auto it = set.begin(); it != set.end();) {
    if (it->first != block && (!old_age || it->second < *old_age)) ++it->second;
    if (it->second >= assoc_)
      it = set.erase(it);
    else
      ++it;
  }
  set[block] = 0;
  return out;
}

LruMustCache::Fact LruMustCache::transfer(const Stmts& stmts, const Fact& in) const {
  if (in.unreached) return in;
  Fact out = in;
  for (const auto& s : stmts)
    if (const auto* a = std::get_if<stmt::Access>(&s)) out = access(out, a->block);
  return out;
}

bool LruMustCache::less_equal(const Fact& a, const Fact& b) const {
  if (b.unreached) return true;
  if (a.unreached) return false;
  for (std::uint32_t s = 0; s < sets_; ++s)
    for (const auto& [block, age] : a.sets[s]) {
      auto it = b.sets[s].find(block);
      if (it == b.sets[s].end() || it->second > age) return false;
    }
  return true;
}

bool LruMustCache::must_hit(const Fact& in, std::uint64_t block) const {
  if (in.unreached) return false;
  return in.sets[block % sets_].count(block) != 0;
}

std::string LruMustCache::serialize(const Fact& f) const {
  ByteWriter w;
  w.u8(f.unreached ? 1 : 0);
  if (f.unreached) return std::move(w).take();
  w.u32(static_cast<std::uint32_t>(f.sets.size()));
  for (const auto& set : f.sets) {
    w.u32(static_cast<std::uint32_t>(set.size()));
    for (const auto& [block, age] : set) {
      w.u64(block);
      w.u32(age);
    }
  }
  return std::move(w).take();
}

LruMustCache::Fact LruMustCache::deserialize(std::string_view bytes) const {
  ByteReader r(bytes);
  Fact f;
  const auto tag = r.u8();
  if (tag > 1) throw DecodeError("cache: bad reachability tag");
  f.unreached = tag == 1;
  if (!f.unreached) {
    if (r.u32() != sets_) throw DecodeError("cache: set count does not match geometry");
    f.sets.resize(sets_);
    for (std::uint32_t s = 0; s < sets_; ++s) {
      const auto n = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        const auto block = r.u64();
        const auto age = r.u32();
        if (block % sets_ != s || age >= assoc_) throw DecodeError("cache: entry out of range");
        if (!f.sets[s].emplace(block, age).second) throw DecodeError("cache: duplicate block");
      }
    }
  }
  r.expect_done();
  return f;
}

std::string LruMustCache::describe(const Fact& f) const {
  if (f.unreached) return "unreached";
  std::string s = "[";
  for (std::uint32_t i = 0; i < sets_; ++i) {
    if (i) s += " ";
    s += "s" + std::to_string(i) + ":{";
    bool first = true;
    for (const auto& [block, age] : f.sets[i]) {
      if (!first) s += ",";
      first = false;
      s += "b" + std::to_string(block) + "@" + std::to_string(age);
    }
    s += "}";
  }
  return s + "]";
}

std::size_t LruMustCache::height_bound(const SuperGraph& g) const {
  std::set<std::uint64_t> blocks;
  for (const auto& [id, attr] : g.vertices())
    for (const auto& s : attr.stmts)
      if (const auto* a = std::get_if<stmt::Access>(&s)) blocks.insert(a->block);
  return blocks.size() * (assoc_ + 1) + 2;
}

}  // namespace vcflow
