#include "logic_forge/frontend/ast.hpp"

#include <stdexcept>

namespace logic_forge::frontend {

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
  }
  return "?";
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::string_view to_string(BoolOpKind op) { return op == BoolOpKind::And ? "and" : "or"; }

const FieldDecl* ClassDecl::find_field(const std::string& field) const {
  for (const auto& f : fields) {
    if (f.name == field) return &f;
  }
  return nullptr;
}

std::optional<std::size_t> ClassDecl::field_index(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return i;
  }
  return std::nullopt;
}

const ClassDecl* DslProgram::find_class(const std::string& name) const {
  for (const auto& c : classes) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const ClassDecl& CheckedProgram::entry_class() const { return class_named(entry().param_type); }

const ClassDecl& CheckedProgram::class_named(const std::string& name) const {
  const ClassDecl* decl = program.find_class(name);
  if (decl == nullptr) throw std::logic_error("checked program lacks class " + name);
  return *decl;
}

Expr Expr::int_lit(std::int64_t value, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::IntLit;
  e.int_value = value;
  e.pos = pos;
  return e;
}

Expr Expr::str_lit(std::string value, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::StrLit;
  e.text = std::move(value);
  e.pos = pos;
  return e;
}

Expr Expr::local(std::string name, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::LocalRef;
  e.text = std::move(name);
  e.pos = pos;
  return e;
}

Expr Expr::field(Expr object, std::string name, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::FieldAccess;
  e.text = std::move(name);
  e.args.push_back(std::move(object));
  e.pos = pos;
  return e;
}

Expr Expr::index(Expr list, std::int64_t position, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Index;
  e.int_value = position;
  e.args.push_back(std::move(list));
  e.pos = pos;
  return e;
}

Expr Expr::nondet(Expr list, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Nondet;
  e.args.push_back(std::move(list));
  e.pos = pos;
  return e;
}

Expr Expr::abs(Expr arg, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Abs;
  e.args.push_back(std::move(arg));
  e.pos = pos;
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Binary;
  e.binary_op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.pos = pos;
  return e;
}

Expr Expr::compare(CompareOp op, Expr lhs, Expr rhs, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Compare;
  e.compare_op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.pos = pos;
  return e;
}

Expr Expr::bool_op_of(BoolOpKind op, std::vector<Expr> operands, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::BoolOp;
  e.bool_op = op;
  e.args = std::move(operands);
  e.pos = pos;
  return e;
}

Expr Expr::negate(Expr arg, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::Not;
  e.args.push_back(std::move(arg));
  e.pos = pos;
  return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
    case ExprKind::Index:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::StrLit:
    case ExprKind::LocalRef:
    case ExprKind::FieldAccess:
      if (a.text != b.text) return false;
      break;
    case ExprKind::Binary:
      if (a.binary_op != b.binary_op) return false;
      break;
    case ExprKind::Compare:
      if (a.compare_op != b.compare_op) return false;
      break;
    case ExprKind::BoolOp:
      if (a.bool_op != b.bool_op) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(a.args[i], b.args[i])) return false;
  }
  return true;
}

namespace {

bool same_field(const FieldDecl& a, const FieldDecl& b) {
  return a.name == b.name && a.base == b.base && a.class_name == b.class_name &&
         a.unique == b.unique && a.domain == b.domain && a.list_len == b.list_len;
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.target == b.target && structurally_equal(a.value, b.value);
}

}  // namespace

bool structurally_equal(const DslProgram& a, const DslProgram& b) {
  if (a.classes.size() != b.classes.size() || a.functions.size() != b.functions.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const auto& ca = a.classes[i];
    const auto& cb = b.classes[i];
    if (ca.name != cb.name || ca.fields.size() != cb.fields.size()) return false;
    for (std::size_t j = 0; j < ca.fields.size(); ++j) {
      if (!same_field(ca.fields[j], cb.fields[j])) return false;
    }
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.param_name != fb.param_name ||
        fa.param_type != fb.param_type || fa.body.size() != fb.body.size()) {
      return false;
    }
    for (std::size_t j = 0; j < fa.body.size(); ++j) {
      if (!same_stmt(fa.body[j], fb.body[j])) return false;
    }
  }
  return true;
}

}  // namespace logic_forge::frontend
