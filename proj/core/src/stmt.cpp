#include "vcflow/stmt.hpp"

#include <charconv>
#include <sstream>

#include "vcflow/errors.hpp"
#include "text_util.hpp"

namespace vcflow {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const char c = s.front();
  if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.')) return false;
  return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) return std::nullopt;
  return v;
}

stmt::Operand parse_operand(std::string_view tok, std::size_t line) {
  if (auto n = parse_int(tok)) return stmt::Operand{*n};
  if (is_identifier(tok)) return stmt::Operand{std::string(tok)};
  throw ParseError("bad operand '" + std::string(tok) + "'", line);
}

std::string render_operand(const stmt::Operand& o) {
  if (o.is_var()) return std::get<std::string>(o.value);
  return std::to_string(std::get<std::int64_t>(o.value));
}

Stmt parse_one(const std::vector<std::string_view>& t, std::string def_id, std::size_t line) {
  auto fail = [&](const std::string& why) -> Stmt {
    throw ParseError(why, line);
  };
  if (t.empty()) return fail("empty statement");
  const auto kw = t[0];
  auto need_var = [&](std::string_view v) {
    if (!is_identifier(v)) throw ParseError("bad variable name '" + std::string(v) + "'", line);
    return std::string(v);
  };
  if (kw == "nop") {
    if (t.size() != 1) return fail("'nop' takes no arguments");
    return stmt::Nop{};
  }
  if (kw == "def") {
    if (t.size() != 3) return fail("expected 'def <var> <defid>'");
    return stmt::Def{need_var(t[1]), std::string(t[2])};
  }
  if (kw == "use") {
    if (t.size() != 2) return fail("expected 'use <var>'");
    return stmt::Use{need_var(t[1])};
  }
  if (kw == "access") {
    if (t.size() != 2) return fail("expected 'access <blockid>'");
    auto n = parse_int(t[1]);
    if (!n || *n < 0) return fail("bad block id '" + std::string(t[1]) + "'");
    return stmt::Access{static_cast<std::uint64_t>(*n)};
  }
  if (kw == "assign") {
    if (t.size() < 4 || t[2] != "=") return fail("expected 'assign <var> = ...'");
    auto var = need_var(t[1]);
    if (t.size() == 4) {
      auto n = parse_int(t[3]);
      if (!n) return fail("expected integer in 'assign <var> = <int>'");
      return stmt::AssignConst{std::move(var), *n, std::move(def_id)};
    }
    if (t.size() == 6)
      return stmt::AssignBinary{std::move(var), parse_operand(t[3], line), std::string(t[4]),
                                parse_operand(t[5], line), std::move(def_id)};
    return fail("expected 'assign <var> = <x> <op> <y>'");
  }
  return fail("unknown statement '" + std::string(kw) + "'");
}

}  // namespace

std::string_view defined_var(const Stmt& s) {
  return std::visit(
      [](const auto& st) -> std::string_view {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, stmt::Def> || std::is_same_v<T, stmt::AssignConst> ||
                      std::is_same_v<T, stmt::AssignBinary>)
          return st.var;
        else
          return {};
      },
      s);
}

Stmts parse_payload(std::string_view text, VertexId owner, std::size_t line) {
  Stmts out;
  const auto parts = detail::split(text, ';');
  std::size_t index = 0;
  for (auto part : parts) {
    auto toks = detail::tokens(part);
    std::string def_id = "v" + to_string(owner);
    if (index > 0) def_id += "." + std::to_string(index);
    auto s = parse_one(toks, std::move(def_id), line);
    ++index;
    if (std::holds_alternative<stmt::Nop>(s) && parts.size() == 1) return out;
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_stmt(const Stmt& s) {
  return std::visit(
      [](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, stmt::Def>) return "def " + st.var + " " + st.def_id;
        if constexpr (std::is_same_v<T, stmt::Use>) return "use " + st.var;
        if constexpr (std::is_same_v<T, stmt::AssignConst>)
          return "assign " + st.var + " = " + std::to_string(st.value);
        if constexpr (std::is_same_v<T, stmt::AssignBinary>)
          return "assign " + st.var + " = " + render_operand(st.lhs) + " " + st.op + " " +
                 render_operand(st.rhs);
        if constexpr (std::is_same_v<T, stmt::Access>) return "access " + std::to_string(st.block);
        if constexpr (std::is_same_v<T, stmt::Nop>) return "nop";
      },
      s);
}

std::string render_payload(const Stmts& stmts) {
  if (stmts.empty()) return "nop";
  std::string out;
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    if (i) out += " ; ";
    out += render_stmt(stmts[i]);
  }
  return out;
}

}  // namespace vcflow
