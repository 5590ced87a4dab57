#include "vcflow/fact_store.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "vcflow/bytes.hpp"
#include "vcflow/errors.hpp"

namespace vcflow {

namespace {

std::function<void()>& commit_hook() {
  static std::function<void()> hook;
  return hook;
}

constexpr std::string_view kMagic = "VCFS";

std::string encode_snapshot(const StoreMeta& meta, const FactStore::Entries& entries) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(FactStore::kFormatVersion);
  w.str(meta.analysis);
  w.str(meta.fingerprint);
  w.u64(entries.size());
  for (const auto& [key, bytes] : entries) {
    w.u64(value_of(key.vertex));
    w.u8(static_cast<std::uint8_t>(key.slot));
    w.str(bytes);
  }
  return std::move(w).take();
}

void write_snapshot(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw StoreIO("cannot write " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) throw StoreIO("short write to " + tmp.string());
  }
  try {
    if (commit_hook()) commit_hook()();
    std::filesystem::rename(tmp, path);
  } catch (const std::filesystem::filesystem_error& e) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw StoreIO(std::string("cannot replace store: ") + e.what());
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw;
  }
}

}  // namespace

FactStore FactStore::in_memory(StoreMeta meta) { return FactStore(std::move(meta), std::nullopt); }

FactStore FactStore::create_file(const std::filesystem::path& path, StoreMeta meta) {
  FactStore s(std::move(meta), path);
  write_snapshot(path, encode_snapshot(s.meta_, s.entries_));
  return s;
}

FactStore FactStore::open_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw StoreIO("cannot open store " + path.string());
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (data.size() < kMagic.size() || std::string_view(data).substr(0, 4) != kMagic)
    throw DecodeError("not a fact store: " + path.string());
  ByteReader r(std::string_view(data).substr(4));
  if (r.u32() != kFormatVersion) throw DecodeError("unsupported store format version");
  StoreMeta meta;
  meta.analysis = r.str();
  meta.fingerprint = r.str();
  FactStore s(std::move(meta), path);
  const auto count = r.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto v = r.u64();
    const auto slot = r.u8();
    if (slot > 1) throw DecodeError("bad slot tag for vertex " + std::to_string(v));
    auto bytes = r.str();
    StoreKey key{vid(v), static_cast<Slot>(slot)};
    if (!s.entries_.emplace(key, std::move(bytes)).second)
      throw DecodeError("duplicate record for vertex " + std::to_string(v));
  }
  r.expect_done();
  return s;
}

void FactStore::require(const std::string& fingerprint) const {
  if (meta_.fingerprint != fingerprint)
    throw WrongAnalysis("store holds '" + meta_.fingerprint + "' facts, not '" + fingerprint + "'");
}

std::vector<std::optional<std::string>> FactStore::batch_get(std::span<const StoreKey> keys) const {
  std::vector<std::optional<std::string>> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(get(k));
  return out;
}

std::optional<std::string> FactStore::get(StoreKey key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactStore::batch_put(const Pairs& pairs) { commit(pairs, {}); }

void FactStore::purge(const std::set<VertexId>& vertices) { commit({}, vertices); }

void FactStore::commit(const Pairs& pairs, const std::set<VertexId>& purged) {
  if (pairs.empty() && purged.empty()) return;
  Entries next = entries_;
  for (const auto& [k, bytes] : pairs) next.insert_or_assign(k, bytes);
  for (auto v : purged) {
    next.erase(StoreKey{v, Slot::In});
    next.erase(StoreKey{v, Slot::Out});
  }
  install(std::move(next));
}

void FactStore::replace_all(Entries entries) { install(std::move(entries)); }

void FactStore::install(Entries next) {
  if (path_) write_snapshot(*path_, encode_snapshot(meta_, next));
  entries_ = std::move(next);
}

std::set<VertexId> FactStore::vertices() const {
  std::set<VertexId> out;
  for (const auto& kv : entries_) out.insert(kv.first.vertex);
  return out;
}

std::string FactStore::encode() const { return encode_snapshot(meta_, entries_); }

void FactStore::set_commit_hook(std::function<void()> hook) { commit_hook() = std::move(hook); }

}  // namespace vcflow
