#include "logic_forge/model/dump.hpp"

#include <sstream>

namespace logic_forge::model {

namespace {

std::string domain_text(const VarDomain& d) {
  if (d.kind == VarDomain::Kind::IntRange) {
    return "[" + std::to_string(d.lo) + ", " + std::to_string(d.hi) + ")";
  }
  std::string out = "{";
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (i != 0) out += ", ";
    out += "\"" + d.labels[i] + "\"";
  }
  return out + "}";
}

void prefix(std::ostream& out, const ConstraintModel& model, const ConstraintExpr& e) {
  switch (e.op) {
    case Op::Const:
      out << e.value;
      return;
    case Op::Var:
      out << model.vars[e.var].name;
      return;
    case Op::Elem:
      out << "(elem s" << e.selector << ' ' << model.group_of(e.selector).fields[e.field] << ')';
      return;
    default:
      out << '(' << to_string(e.op);
      for (const auto& a : e.args) {
        out << ' ';
        prefix(out, model, a);
      }
      out << ')';
  }
}

}  // namespace

std::string to_prefix(const ConstraintModel& model, const ConstraintExpr& expr) {
  std::ostringstream out;
  prefix(out, model, expr);
  return out.str();
}

std::string dump(const ConstraintModel& model) {
  std::ostringstream out;
  for (const Var& v : model.vars) out << v.name << " : " << domain_text(v.domain) << '\n';
  for (const SelectorVar& s : model.selectors) {
    out << "s" << s.id << " " << s.name << " : " << model.groups[s.group].name << "[0.."
        << s.list_len << ")\n";
  }
  for (const auto& group : model.alldiff_groups) {
    out << "alldiff {";
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i != 0) out << ", ";
      out << model.vars[group[i]].name;
    }
    out << "}\n";
  }
  for (const auto& c : model.constraints) out << "assume " << to_prefix(model, c) << '\n';
  return out.str();
}

}  // namespace logic_forge::model
