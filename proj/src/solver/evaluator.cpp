#include "logic_forge/solver/evaluator.hpp"

#include <set>

#include "logic_forge/model/dump.hpp"
#include "logic_forge/solver/arith.hpp"

namespace logic_forge::solver {

using model::ConstraintExpr;
using model::Op;

model::Value evaluate(const model::ConstraintModel& m, const ConstraintExpr& e,
                      const model::Assignment& a) {
  switch (e.op) {
    case Op::Const: return e.value;
    case Op::Var: return a.vars[static_cast<std::size_t>(e.var)];
    case Op::Elem: {
      const Value index = a.selectors[static_cast<std::size_t>(e.selector)];
      return a.vars[static_cast<std::size_t>(m.elem_var(e.selector, e.field, index))];
    }
    case Op::Abs: return sat_abs(evaluate(m, e.args[0], a));
    case Op::Add: return sat_add(evaluate(m, e.args[0], a), evaluate(m, e.args[1], a));
    case Op::Sub: return sat_sub(evaluate(m, e.args[0], a), evaluate(m, e.args[1], a));
    case Op::Mul: return sat_mul(evaluate(m, e.args[0], a), evaluate(m, e.args[1], a));
    case Op::Eq: return evaluate(m, e.args[0], a) == evaluate(m, e.args[1], a);
    case Op::Ne: return evaluate(m, e.args[0], a) != evaluate(m, e.args[1], a);
    case Op::Lt: return evaluate(m, e.args[0], a) < evaluate(m, e.args[1], a);
    case Op::Le: return evaluate(m, e.args[0], a) <= evaluate(m, e.args[1], a);
    case Op::Gt: return evaluate(m, e.args[0], a) > evaluate(m, e.args[1], a);
    case Op::Ge: return evaluate(m, e.args[0], a) >= evaluate(m, e.args[1], a);
    case Op::And:
      for (const auto& arg : e.args) {
        if (evaluate(m, arg, a) == 0) return 0;
      }
      return 1;
    case Op::Or:
      for (const auto& arg : e.args) {
        if (evaluate(m, arg, a) != 0) return 1;
      }
      return 0;
    case Op::Not: return evaluate(m, e.args[0], a) == 0;
  }
  return 0;
}

std::optional<std::string> first_violation(const model::ConstraintModel& m,
                                           const model::Assignment& a,
                                           const std::vector<ConstraintExpr>& extra) {
  if (a.vars.size() != m.vars.size()) return "assignment is not total over vars";
  if (a.selectors.size() != m.selectors.size()) return "assignment is not total over selectors";
  for (const auto& v : m.vars) {
    if (!v.domain.contains(a.vars[static_cast<std::size_t>(v.id)])) {
      return v.name + " is outside its domain";
    }
  }
  for (const auto& s : m.selectors) {
    const Value idx = a.selectors[static_cast<std::size_t>(s.id)];
    if (idx < 0 || idx >= s.list_len) return "selector " + s.name + " is out of range";
  }
  for (const auto& group : m.alldiff_groups) {
    std::set<Value> seen;
    for (model::VarId v : group) {
      if (!seen.insert(a.vars[static_cast<std::size_t>(v)]).second) {
        return "all-different violated at " + m.vars[static_cast<std::size_t>(v)].name;
      }
    }
  }
  for (const auto& c : m.constraints) {
    if (evaluate(m, c, a) == 0) return "constraint violated: " + model::to_prefix(m, c);
  }
  for (const auto& c : extra) {
    if (evaluate(m, c, a) == 0) return "constraint violated: " + model::to_prefix(m, c);
  }
  return std::nullopt;
}

}  // namespace logic_forge::solver
