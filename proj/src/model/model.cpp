#include "logic_forge/model/model.hpp"

#include <set>

namespace logic_forge::model {

VarDomain VarDomain::range(Value lo, Value hi) {
  VarDomain d;
  d.kind = Kind::IntRange;
  d.lo = lo;
  d.hi = hi;
  return d;
}

VarDomain VarDomain::enumeration(std::vector<std::string> labels) {
  VarDomain d;
  d.kind = Kind::Enum;
  d.labels = std::move(labels);
  return d;
}

std::size_t VarDomain::size() const {
  return kind == Kind::IntRange ? static_cast<std::size_t>(hi - lo) : labels.size();
}

std::optional<Value> VarDomain::code_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<Value>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> InstanceGroup::field_index(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] == field) return i;
  }
  return std::nullopt;
}

std::string_view to_string(Op op) {
  switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Elem: return "elem";
    case Op::Abs: return "abs";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
  }
  return "?";
}

bool is_boolean(Op op) {
  switch (op) {
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
    case Op::And: case Op::Or: case Op::Not:
      return true;
    default:
      return false;
  }
}

ConstraintExpr ConstraintExpr::constant(Value v) {
  ConstraintExpr e;
  e.op = Op::Const;
  e.value = v;
  return e;
}

ConstraintExpr ConstraintExpr::var_ref(VarId v) {
  ConstraintExpr e;
  e.op = Op::Var;
  e.var = v;
  return e;
}

ConstraintExpr ConstraintExpr::elem(SelectorId s, std::size_t field) {
  ConstraintExpr e;
  e.op = Op::Elem;
  e.selector = s;
  e.field = field;
  return e;
}

ConstraintExpr ConstraintExpr::unary(Op op, ConstraintExpr arg) {
  ConstraintExpr e;
  e.op = op;
  e.args.push_back(std::move(arg));
  return e;
}

ConstraintExpr ConstraintExpr::binary(Op op, ConstraintExpr lhs, ConstraintExpr rhs) {
  ConstraintExpr e;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

ConstraintExpr ConstraintExpr::nary(Op op, std::vector<ConstraintExpr> args) {
  ConstraintExpr e;
  e.op = op;
  e.args = std::move(args);
  return e;
}

namespace {

void validate_expr(const ConstraintModel& model, const ConstraintExpr& e, bool want_bool) {
  if (want_bool != is_boolean(e.op)) {
    throw InternalError(std::string("operator '") + std::string(to_string(e.op)) +
                        (want_bool ? "' used where a boolean is required"
                                   : "' used where an integer is required"));
  }
  auto expect_arity = [&](std::size_t n) {
    if (e.args.size() != n) {
      throw InternalError("operator '" + std::string(to_string(e.op)) + "' has wrong arity");
    }
  };
  switch (e.op) {
    case Op::Const:
      expect_arity(0);
      return;
    case Op::Var:
      expect_arity(0);
      if (e.var < 0 || static_cast<std::size_t>(e.var) >= model.vars.size()) {
        throw InternalError("constraint references missing var " + std::to_string(e.var));
      }
      return;
    case Op::Elem:
      expect_arity(0);
      if (e.selector < 0 || static_cast<std::size_t>(e.selector) >= model.selectors.size()) {
        throw InternalError("constraint references missing selector " + std::to_string(e.selector));
      }
      if (e.field >= model.group_of(e.selector).fields.size()) {
        throw InternalError("elem field index out of range");
      }
      return;
    case Op::Abs:
      expect_arity(1);
      validate_expr(model, e.args[0], false);
      return;
    case Op::Add: case Op::Sub: case Op::Mul:
      expect_arity(2);
      for (const auto& a : e.args) validate_expr(model, a, false);
      return;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      expect_arity(2);
      for (const auto& a : e.args) validate_expr(model, a, false);
      return;
    case Op::And: case Op::Or:
      for (const auto& a : e.args) validate_expr(model, a, true);
      return;
    case Op::Not:
      expect_arity(1);
      validate_expr(model, e.args[0], true);
      return;
  }
}

}  // namespace

void validate_model(const ConstraintModel& model) {
  for (std::size_t i = 0; i < model.vars.size(); ++i) {
    if (model.vars[i].id != static_cast<VarId>(i)) throw InternalError("var ids are not dense");
    if (model.vars[i].domain.size() == 0) {
      throw InternalError("var " + model.vars[i].name + " has an empty domain");
    }
  }
  for (std::size_t i = 0; i < model.selectors.size(); ++i) {
    const SelectorVar& s = model.selectors[i];
    if (s.id != static_cast<SelectorId>(i)) throw InternalError("selector ids are not dense");
    if (s.group >= model.groups.size()) throw InternalError("selector over a missing group");
    if (s.list_len != static_cast<int>(model.groups[s.group].instance_count()) || s.list_len <= 0) {
      throw InternalError("selector " + s.name + " does not match its list length");
    }
  }
  for (const InstanceGroup& g : model.groups) {
    for (const auto& inst : g.vars) {
      if (inst.size() != g.fields.size()) throw InternalError("ragged instance in group " + g.name);
      for (VarId v : inst) {
        if (v < 0 || static_cast<std::size_t>(v) >= model.vars.size()) {
          throw InternalError("group " + g.name + " references a missing var");
        }
      }
    }
  }
  if (!model.groups.empty() && model.primary_group >= model.groups.size()) {
    throw InternalError("primary group out of range");
  }
  std::set<VarId> in_alldiff;
  for (const auto& group : model.alldiff_groups) {
    for (VarId v : group) {
      if (v < 0 || static_cast<std::size_t>(v) >= model.vars.size()) {
        throw InternalError("alldiff references a missing var");
      }
      if (!(model.vars[v].domain == model.vars[group.front()].domain)) {
        throw InternalError("alldiff group mixes domains");
      }
      if (!in_alldiff.insert(v).second) throw InternalError("var in two alldiff groups");
    }
  }
  for (const auto& c : model.constraints) validate_expr(model, c, true);
}

}  // namespace logic_forge::model
