#pragma once

#include <boost/container/flat_set.hpp>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcflow/lattice.hpp"

namespace vcflow {

/// Reaching definitions: a forward may-analysis over sets of (def id, var).
class ReachingDefs {
 public:
  struct Def {
    std::string def_id;
    std::string var;
    auto operator<=>(const Def&) const = default;
  };
  /// Sorted vector of defs with a set interface.
  using DefSet = boost::container::flat_set<Def, std::less<Def>, std::vector<Def>>;
  struct Fact {
    DefSet defs;
    bool operator==(const Fact&) const = default;
  };

  std::string name() const { return "rd"; }
  std::string fingerprint() const { return "rd/increasing/v1"; }
  Direction direction() const { return Direction::Increasing; }
  Fact initial() const { return {}; }
  Fact entry_fact() const { return {}; }

  Fact merge(std::span<const Fact* const> preds, const Fact& old_in) const;

  /// `def`/`assign` kill every definition of their variable, then generate
  /// their own; other statements are the identity.
  Fact transfer(const Stmts& stmts, const Fact& in) const;

  bool less_equal(const Fact& a, const Fact& b) const;
  std::string serialize(const Fact& f) const;
  Fact deserialize(std::string_view bytes) const;
  std::string describe(const Fact& f) const;
  std::size_t height_bound(const SuperGraph& g) const;
};

}  // namespace vcflow
