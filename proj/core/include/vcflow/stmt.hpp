#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vcflow {

/// Stable vertex identifier, unique within a graph and across versions.
enum class VertexId : std::uint64_t {};

constexpr VertexId vid(std::uint64_t n) noexcept { return VertexId{n}; }
constexpr std::uint64_t value_of(VertexId v) noexcept { return static_cast<std::uint64_t>(v); }

inline std::ostream& operator<<(std::ostream& os, VertexId v) { return os << value_of(v); }
inline std::string to_string(VertexId v) { return std::to_string(value_of(v)); }

namespace stmt {

/// `def <var> <defid>`: opaque definition of var.
struct Def {
  std::string var;
  std::string def_id;
  bool operator==(const Def&) const = default;
};

/// `use <var>`
struct Use {
  std::string var;
  bool operator==(const Use&) const = default;
};

/// Operand of an assignment: a variable name or an integer literal.
struct Operand {
  std::variant<std::string, std::int64_t> value;
  bool is_var() const noexcept { return std::holds_alternative<std::string>(value); }
  bool operator==(const Operand&) const = default;
};

/// `assign <var> = <int>`
struct AssignConst {
  std::string var;
  std::int64_t value = 0;
  std::string def_id;  // derived from the owning vertex, never rendered
  bool operator==(const AssignConst&) const = default;
};

/// `assign <var> = <operand> <op> <operand>`; op is kept verbatim so that
/// analyses decide which operators they understand.
struct AssignBinary {
  std::string var;
  Operand lhs;
  std::string op;
  Operand rhs;
  std::string def_id;
  bool operator==(const AssignBinary&) const = default;
};

/// `access <blockid>`: memory block access for cache analyses.
struct Access {
  std::uint64_t block = 0;
  bool operator==(const Access&) const = default;
};

struct Nop {
  bool operator==(const Nop&) const = default;
};

}  // namespace stmt

using Stmt = std::variant<stmt::Def, stmt::Use, stmt::AssignConst, stmt::AssignBinary,
                          stmt::Access, stmt::Nop>;

/// Ordered statements of one vertex.  Empty means a no-op vertex.
using Stmts = std::vector<Stmt>;

/// Variable defined by `s`, or empty for statements that define nothing.
std::string_view defined_var(const Stmt& s);

/// Parses a statement payload: one or more statements separated by ';'.
/// `owner` seeds the definition ids of assignments ("v<owner>" or
/// "v<owner>.<index>").  Throws ParseError with `line` on malformed input.
Stmts parse_payload(std::string_view text, VertexId owner, std::size_t line = 0);

std::string render_payload(const Stmts& stmts);
std::string render_stmt(const Stmt& s);

}  // namespace vcflow
