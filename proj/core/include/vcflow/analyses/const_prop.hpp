#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "vcflow/lattice.hpp"

namespace vcflow {

/// Constant propagation over the flat lattice ⊥ < Const(c) < ⊤, pointwise per
/// variable.  A variable absent from the environment is ⊥.  Not distributive.
class ConstProp {
 public:
  struct Value {
    bool top = false;
    std::int64_t constant = 0;  // meaningful when !top

    static Value top_value() { return Value{true, 0}; }
    static Value of(std::int64_t c) { return Value{false, c}; }
    bool operator==(const Value&) const = default;
  };
  struct Fact {
    std::map<std::string, Value> env;
    bool operator==(const Fact&) const = default;
  };

  std::string name() const { return "cp"; }
  std::string fingerprint() const { return "cp/increasing/v1"; }
  Direction direction() const { return Direction::Increasing; }
  Fact initial() const { return {}; }
  Fact entry_fact() const { return {}; }

  Fact merge(std::span<const Fact* const> preds, const Fact& old_in) const;

  /// Arithmetic wraps at 64 bits.  Supported operators: + - *.
  /// Throws AnalysisDefinitionError for anything else.
  Fact transfer(const Stmts& stmts, const Fact& in) const;

  bool less_equal(const Fact& a, const Fact& b) const;
  std::string serialize(const Fact& f) const;
  Fact deserialize(std::string_view bytes) const;
  std::string describe(const Fact& f) const;
  std::size_t height_bound(const SuperGraph& g) const;
};

}  // namespace vcflow
