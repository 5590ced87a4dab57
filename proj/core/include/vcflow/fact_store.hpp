#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcflow/stmt.hpp"

namespace vcflow {

enum class Slot : std::uint8_t { In = 0, Out = 1 };

struct StoreKey {
  VertexId vertex;
  Slot slot;
  auto operator<=>(const StoreKey&) const = default;
};

/// Identifies the analysis (and its parameters) that wrote a store.
struct StoreMeta {
  std::string analysis;
  std::string fingerprint;
  bool operator==(const StoreMeta&) const = default;
};

/// Keyed snapshot of serialized facts.  The store never interprets the
/// bytes.  Every mutation is all-or-nothing: the file-backed variant writes
/// a complete new snapshot beside the old one and renames it into place.
///
/// File layout (little-endian):
///   "VCFS" u32 version  str analysis  str fingerprint  u64 count
///   count x { u64 vertex  u8 slot  u32 len  bytes }
class FactStore {
 public:
  using Entries = std::map<StoreKey, std::string>;
  using Pairs = std::vector<std::pair<StoreKey, std::string>>;

  static constexpr std::uint32_t kFormatVersion = 1;

  static FactStore in_memory(StoreMeta meta);
  /// New empty store at `path`; replaces whatever was there.
  static FactStore create_file(const std::filesystem::path& path, StoreMeta meta);
  /// Opens an existing snapshot.  Throws StoreIO / DecodeError.
  static FactStore open_file(const std::filesystem::path& path);

  const StoreMeta& meta() const noexcept { return meta_; }
  bool file_backed() const noexcept { return path_.has_value(); }

  /// Throws WrongAnalysis unless the store was written under `fingerprint`.
  void require(const std::string& fingerprint) const;

  /// Positional lookup; absent keys give an empty optional.
  std::vector<std::optional<std::string>> batch_get(std::span<const StoreKey> keys) const;
  std::optional<std::string> get(StoreKey key) const;

  /// Later duplicates within `pairs` win.  Throws StoreIO.
  void batch_put(const Pairs& pairs);
  /// Drops both slots of each vertex.  Throws StoreIO.
  void purge(const std::set<VertexId>& vertices);
  /// batch_put followed by purge, as one atomic update.
  void commit(const Pairs& pairs, const std::set<VertexId>& purged);
  /// Replaces the whole content.
  void replace_all(Entries entries);

  const Entries& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::set<VertexId> vertices() const;

  /// The snapshot bytes this store would write.
  std::string encode() const;

  /// Test hook run after the new snapshot is written and before it replaces
  /// the old one; throwing from it aborts the commit.
  static void set_commit_hook(std::function<void()> hook);

 private:
  FactStore(StoreMeta meta, std::optional<std::filesystem::path> path)
      : meta_(std::move(meta)), path_(std::move(path)) {}

  void install(Entries next);

  StoreMeta meta_;
  std::optional<std::filesystem::path> path_;
  Entries entries_;
};

}  // namespace vcflow
