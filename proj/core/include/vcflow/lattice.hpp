#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "vcflow/graph.hpp"
#include "vcflow/stmt.hpp"

namespace vcflow {

/// Increasing analyses merge with join and start from bottom; decreasing
/// analyses merge with meet and start from top.
enum class Direction { Increasing, Decreasing };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::Increasing ? "increasing" : "decreasing";
}

/// Contract every client analysis satisfies.
///
///   initial()       bottom (Increasing) or top (Decreasing); the identity of merge
///   entry_fact()    boundary value merged into the IN of every entry vertex
///   merge(ps, old)  old ⊗ (⊗ ps); must be commutative, associative, idempotent
///   transfer(s, f)  monotone in f, deterministic
///   less_equal      the lattice partial order
///   serialize / deserialize   byte round-trip up to ==
///   fingerprint()   identifies analysis + parameters for persisted facts
///
/// All members must be pure and safe to call concurrently.
template <class A>
concept DataflowAnalysis =
    std::equality_comparable<typename A::Fact> && std::copyable<typename A::Fact> &&
    requires(const A& a, const typename A::Fact& f, std::span<const typename A::Fact* const> ps,
             const Stmts& s, std::string_view bytes) {
      { a.name() } -> std::convertible_to<std::string>;
      { a.fingerprint() } -> std::convertible_to<std::string>;
      { a.direction() } -> std::same_as<Direction>;
      { a.initial() } -> std::same_as<typename A::Fact>;
      { a.entry_fact() } -> std::same_as<typename A::Fact>;
      { a.merge(ps, f) } -> std::same_as<typename A::Fact>;
      { a.transfer(s, f) } -> std::same_as<typename A::Fact>;
      { a.less_equal(f, f) } -> std::same_as<bool>;
      { a.serialize(f) } -> std::same_as<std::string>;
      { a.deserialize(bytes) } -> std::same_as<typename A::Fact>;
      { a.describe(f) } -> std::convertible_to<std::string>;
    };

/// Whether a freshly computed OUT must be published.  `old == nullptr` is the
/// never-computed sentinel and always propagates.  Analyses may supply
/// `propagate(const Fact*, const Fact&)` to override the default inequality.
template <DataflowAnalysis A>
bool should_propagate(const A& a, const typename A::Fact* old, const typename A::Fact& fresh) {
  if constexpr (requires { { a.propagate(old, fresh) } -> std::same_as<bool>; }) {
    return a.propagate(old, fresh);
  } else {
    return old == nullptr || !(*old == fresh);
  }
}

/// Rough lattice height for a given graph, used to size iteration caps.
template <DataflowAnalysis A>
std::size_t height_estimate(const A& a, const SuperGraph& g) {
  if constexpr (requires { { a.height_bound(g) } -> std::convertible_to<std::size_t>; }) {
    return a.height_bound(g);
  } else {
    return g.size() + 1;
  }
}

/// Convenience for merging two facts: merge({b}, a).
template <DataflowAnalysis A>
typename A::Fact merge2(const A& a, const typename A::Fact& x, const typename A::Fact& y) {
  const typename A::Fact* ps[] = {&y};
  return a.merge(std::span<const typename A::Fact* const>(ps), x);
}

}  // namespace vcflow
