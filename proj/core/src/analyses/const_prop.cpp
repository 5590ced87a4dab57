#include "vcflow/analyses/const_prop.hpp"

#include <optional>
#include <set>

#include "vcflow/bytes.hpp"
#include "vcflow/errors.hpp"

namespace vcflow {

namespace {

using Value = ConstProp::Value;

Value join(const Value& a, const Value& b) {
  if (a.top || b.top || a.constant != b.constant) return Value::top_value();
  return a;
}

// nullopt is ⊥.
std::optional<Value> operand_value(const stmt::Operand& o, const ConstProp::Fact& f) {
  if (!o.is_var()) return Value::of(std::get<std::int64_t>(o.value));
  auto it = f.env.find(std::get<std::string>(o.value));
  if (it == f.env.end()) return std::nullopt;
  return it->second;
}

std::int64_t apply_op(const std::string& op, std::int64_t a, std::int64_t b) {
  const auto ua = static_cast<std::uint64_t>(a);
  const auto ub = static_cast<std::uint64_t>(b);
  if (op == "+") return static_cast<std::int64_t>(ua + ub);
  if (op == "-") return static_cast<std::int64_t>(ua - ub);
  return static_cast<std::int64_t>(ua * ub);
}

bool known_op(const std::string& op) { return op == "+" || op == "-" || op == "*"; }

}  // namespace

ConstProp::Fact ConstProp::merge(std::span<const Fact* const> preds, const Fact& old_in) const {
  Fact out = old_in;
  for (const auto* p : preds)
    for (const auto& [var, v] : p->env) {
      auto [it, inserted] = out.env.emplace(var, v);
      if (!inserted) it->second = join(it->second, v);
    }
  return out;
}

ConstProp::Fact ConstProp::transfer(const Stmts& stmts, const Fact& in) const {
  Fact out = in;
  for (const auto& s : stmts) {
    if (const auto* d = std::get_if<stmt::Def>(&s)) {
      out.env[d->var] = Value::top_value();
    } else if (const auto* c = std::get_if<stmt::AssignConst>(&s)) {
      out.env[c->var] = Value::of(c->value);
    } else if (const auto* b = std::get_if<stmt::AssignBinary>(&s)) {
      if (!known_op(b->op))
        throw AnalysisDefinitionError("constant propagation: unknown operator '" + b->op + "'");
      const auto l = operand_value(b->lhs, out);
      const auto r = operand_value(b->rhs, out);
      if (!l || !r)
        out.env.erase(b->var);
      else if (l->top || r->top)
        out.env[b->var] = Value::top_value();
      else
        out.env[b->var] = Value::of(apply_op(b->op, l->constant, r->constant));
    }
  }
  return out;
}

bool ConstProp::less_equal(const Fact& a, const Fact& b) const {
  for (const auto& [var, va] : a.env) {
    auto it = b.env.find(var);
    if (it == b.env.end()) return false;
    const auto& vb = it->second;
    if (vb.top) continue;
    if (va.top || va.constant != vb.constant) return false;
  }
  return true;
}

std::string ConstProp::serialize(const Fact& f) const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(f.env.size()));
  for (const auto& [var, v] : f.env) {
    w.str(var);
    w.u8(v.top ? 1 : 0);
    if (!v.top) w.i64(v.constant);
  }
  return std::move(w).take();
}

ConstProp::Fact ConstProp::deserialize(std::string_view bytes) const {
  ByteReader r(bytes);
  Fact f;
  const auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    auto var = r.str();
    const auto tag = r.u8();
    if (tag > 1) throw DecodeError("constant propagation: bad value tag");
    Value v = tag ? Value::top_value() : Value::of(r.i64());
    if (!f.env.emplace(std::move(var), v).second)
      throw DecodeError("constant propagation: duplicate variable");
  }
  r.expect_done();
  return f;
}

std::string ConstProp::describe(const Fact& f) const {
  std::string s = "[";
  bool first = true;
  for (const auto& [var, v] : f.env) {
    if (!first) s += ",";
    first = false;
    s += var + "=" + (v.top ? std::string("T") : std::to_string(v.constant));
  }
  return s + "]";
}

std::size_t ConstProp::height_bound(const SuperGraph& g) const {
  std::set<std::string> vars;
  for (const auto& [id, attr] : g.vertices())
    for (const auto& s : attr.stmts)
      if (auto v = defined_var(s); !v.empty()) vars.emplace(v);
  return 2 * vars.size() + 1;
}

}  // namespace vcflow
