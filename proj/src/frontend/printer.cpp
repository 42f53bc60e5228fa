#include "logic_forge/frontend/printer.hpp"

#include <sstream>

namespace logic_forge::frontend {

namespace {

constexpr std::string_view kIndent = "    ";

bool is_compound(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
    case ExprKind::Compare:
    case ExprKind::BoolOp:
    case ExprKind::Not:
      return true;
    case ExprKind::IntLit:
      return e.int_value < 0;
    default:
      return false;
  }
}

void print_expr(std::ostream& out, const Expr& e);

void print_operand(std::ostream& out, const Expr& e) {
  if (is_compound(e)) out << '(';
  print_expr(out, e);
  if (is_compound(e)) out << ')';
}

void print_expr(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit:
      out << e.int_value;
      return;
    case ExprKind::StrLit:
      out << quote_string(e.text);
      return;
    case ExprKind::LocalRef:
      out << e.text;
      return;
    case ExprKind::FieldAccess:
      print_operand(out, e.args[0]);
      out << '.' << e.text;
      return;
    case ExprKind::Index:
      print_operand(out, e.args[0]);
      out << '[' << e.int_value << ']';
      return;
    case ExprKind::Nondet:
      out << "nondet(";
      print_expr(out, e.args[0]);
      out << ')';
      return;
    case ExprKind::Abs:
      out << "abs(";
      print_expr(out, e.args[0]);
      out << ')';
      return;
    case ExprKind::Binary:
      print_operand(out, e.args[0]);
      out << ' ' << to_string(e.binary_op) << ' ';
      print_operand(out, e.args[1]);
      return;
    case ExprKind::Compare:
      print_operand(out, e.args[0]);
      out << ' ' << to_string(e.compare_op) << ' ';
      print_operand(out, e.args[1]);
      return;
    case ExprKind::BoolOp:
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i != 0) out << ' ' << to_string(e.bool_op) << ' ';
        print_operand(out, e.args[i]);
      }
      return;
    case ExprKind::Not:
      out << "not ";
      print_operand(out, e.args[0]);
      return;
  }
}

std::string literal_text(const Literal& lit) {
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
  return quote_string(std::get<std::string>(lit));
}

std::string base_text(const FieldDecl& field) {
  switch (field.base) {
    case BaseKind::Int: return "int";
    case BaseKind::Str: return "str";
    case BaseKind::ClassRef: return field.class_name;
  }
  return "?";
}

}  // namespace

std::string quote_string(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string pretty(const Expr& expr) {
  std::ostringstream out;
  print_expr(out, expr);
  return out.str();
}

std::string pretty_annotation(const FieldDecl& field) {
  if (field.list_len) return "list[" + base_text(field) + ", " + std::to_string(*field.list_len) + "]";
  std::string inner = base_text(field);
  if (field.domain) {
    const DomainSpec& d = *field.domain;
    std::string values;
    if (d.kind == DomainSpec::Kind::Range) {
      values = "range(" + std::to_string(d.lo) + ", " + std::to_string(d.hi) + ")";
    } else {
      for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (i != 0) values += ", ";
        values += literal_text(d.values[i]);
      }
    }
    inner = "Domain[" + inner + ", " + values + "]";
  }
  return field.unique ? "Unique[" + inner + "]" : inner;
}

std::string pretty(const DslProgram& program) {
  std::ostringstream out;
  bool first = true;
  for (const ClassDecl& c : program.classes) {
    if (!first) out << '\n';
    first = false;
    out << "class " << c.name << ":\n";
    for (const FieldDecl& f : c.fields) {
      out << kIndent << f.name << ": " << pretty_annotation(f) << '\n';
    }
  }
  for (const FuncDecl& fn : program.functions) {
    if (!first) out << '\n';
    first = false;
    out << "def " << fn.name << '(' << fn.param_name << ": " << fn.param_type
        << ") -> None:\n";
    if (fn.body.empty()) out << kIndent << "pass\n";
    for (const Stmt& s : fn.body) {
      out << kIndent;
      switch (s.kind) {
        case Stmt::Kind::Assign:
          out << s.target << " = " << pretty(s.value);
          break;
        case Stmt::Kind::Assume:
          out << "assume(" << pretty(s.value) << ')';
          break;
        case Stmt::Kind::Assert:
          out << "assert " << pretty(s.value);
          break;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace logic_forge::frontend
