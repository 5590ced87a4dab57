#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vcflow/lattice.hpp"

namespace vcflow {

/// Must-analysis of an LRU set-associative cache.
///
/// The abstract state maps, per cache set, each block guaranteed to be cached
/// to an upper bound on its LRU age (0 = most recent).  Several blocks may
/// share a bound after a merge.  Blocks map to set `block % sets`.  Merge is
/// the meet: blocks present in every operand, with the maximum age.  The
/// synthetic `unreached` state is top and the identity of merge; program
/// entry starts from the empty cache.
class LruMustCache {
 public:
  using Set = std::map<std::uint64_t, std::uint32_t>;  // block -> age bound
  struct Fact {
    bool unreached = true;
    std::vector<Set> sets;  // empty when unreached
    bool operator==(const Fact&) const = default;
  };

  /// Throws AnalysisDefinitionError unless sets >= 1 and assoc >= 1.
  explicit LruMustCache(std::uint32_t sets = 4, std::uint32_t assoc = 2);

  std::uint32_t sets() const noexcept { return sets_; }
  std::uint32_t associativity() const noexcept { return assoc_; }

  std::string name() const { return "cache"; }
  std::string fingerprint() const;
  Direction direction() const { return Direction::Decreasing; }
  Fact initial() const { return Fact{}; }
  Fact entry_fact() const;  // empty cache

  Fact merge(std::span<const Fact* const> preds, const Fact& old_in) const;

  /// `access b`: b becomes age 0; blocks of b's set younger than b's old
  /// bound (all of them on a miss) age by one; ages >= assoc are evicted.
  Fact transfer(const Stmts& stmts, const Fact& in) const;

  bool less_equal(const Fact& a, const Fact& b) const;
  std::string serialize(const Fact& f) const;
  Fact deserialize(std::string_view bytes) const;
  std::string describe(const Fact& f) const;
  std::size_t height_bound(const SuperGraph& g) const;

  /// Guaranteed hit: `block` is mapped in `in`.
  bool must_hit(const Fact& in, std::uint64_t block) const;

  /// One access applied to a reached state.
  Fact access(const Fact& in, std::uint64_t block) const;

 private:
  std::uint32_t sets_;
  std::uint32_t assoc_;
};

}  // namespace vcflow
