#include "logic_forge/cemit/emit.hpp"

#include <map>
#include <set>
#include <sstream>

#include "logic_forge/frontend/printer.hpp"

namespace logic_forge::cemit {

using frontend::BaseKind;
using frontend::CheckedProgram;
using frontend::ClassDecl;
using frontend::Expr;
using frontend::ExprKind;
using frontend::FieldDecl;
using frontend::Stmt;
using frontend::Type;

namespace {

const std::set<std::string> kCKeywords = {
    "auto",     "break",  "case",    "char",   "const",    "continue", "default",  "do",
    "double",   "else",   "enum",    "extern", "float",    "for",      "goto",     "if",
    "inline",   "int",    "long",    "register", "restrict", "return", "short",    "signed",
    "sizeof",   "static", "struct",  "switch", "typedef",  "union",    "unsigned", "void",
    "volatile", "while",  "bool",    "true",   "false",    "main",     "validate", "index",
    "abs",      "size_t"};

constexpr const char* kPrelude =
    "#include <stdbool.h>\n"
    "#include <stddef.h>\n"
    "#include <stdlib.h>\n"
    "\n"
    "#ifndef __CPROVER\n"
    "void __CPROVER_assume(bool condition);\n"
    "void __CPROVER_assert(bool condition, const char * description);\n"
    "void __CPROVER_output(const char * name, ...);\n"
    "#endif\n"
    "\n";

constexpr const char* kMacros =
    "#define __CPROVER_unique_domain( \\\n"
    "  field, field_domain_array) \\\n"
    "{ \\\n"
    "  size_t index; \\\n"
    "  __CPROVER_assume(index < \\\n"
    "    (sizeof(field_domain_array) / \\\n"
    "     sizeof(field_domain_array[0]))); \\\n"
    "  __CPROVER_assume( \\\n"
    "    !field_domain_array##_used[index]); \\\n"
    "  field_domain_array##_used[index] = \\\n"
    "    true; \\\n"
    "  field = field_domain_array[index]; \\\n"
    "}\n"
    "\n"
    "#define __CPROVER_domain( \\\n"
    "  field, field_domain_array) \\\n"
    "{ \\\n"
    "  size_t index; \\\n"
    "  __CPROVER_assume(index < \\\n"
    "    (sizeof(field_domain_array) / \\\n"
    "     sizeof(field_domain_array[0]))); \\\n"
    "  field = field_domain_array[index]; \\\n"
    "}\n"
    "\n"
    "#define __CPROVER_nondet_element(list) \\\n"
    "({ \\\n"
    "  size_t index; \\\n"
    "  __CPROVER_assume(index < \\\n"
    "    (sizeof(list) / sizeof(list[0]))); \\\n"
    "  list[index]; \\\n"
    "})\n"
    "\n";

std::string c_string(const std::string& s) { return frontend::quote_string(s); }

std::string array_name(const ClassDecl& c, const FieldDecl& f) { return c.name + "_" + f.name; }

std::string c_field_type(const FieldDecl& f) {
  if (f.base == BaseKind::Int) return "int";
  if (f.base == BaseKind::Str) return "const char *";
  return "struct " + f.class_name;
}

class Emitter {
 public:
  explicit Emitter(const CheckedProgram& program) : program_(program) {}

  CHarness run() {
    CHarness h;
    out_ << kPrelude;
    h.structs.begin = pos();
    emit_structs();
    h.structs.end = pos();
    h.domain_arrays.begin = pos();
    emit_domain_arrays();
    h.domain_arrays.end = pos();
    h.init_helpers.begin = pos();
    out_ << kMacros;
    emit_init_functions();
    h.init_helpers.end = pos();
    h.validate.begin = pos();
    emit_validate();
    h.validate.end = pos();
    h.main.begin = pos();
    emit_main();
    h.main.end = pos();
    h.text = out_.str();
    return h;
  }

 private:
  std::size_t pos() { return static_cast<std::size_t>(out_.tellp()); }

  // Classes in an order where every struct precedes its users.
  std::vector<const ClassDecl*> ordered_classes() const {
    std::vector<const ClassDecl*> order;
    std::set<std::string> done;
    for (const ClassDecl& c : program_.program.classes) {
      for (const FieldDecl& f : c.fields) {
        if (f.base == BaseKind::ClassRef && done.insert(f.class_name).second) {
          order.push_back(&program_.class_named(f.class_name));
        }
      }
    }
    for (const ClassDecl& c : program_.program.classes) {
      if (done.insert(c.name).second) order.push_back(&c);
    }
    return order;
  }

  void emit_structs() {
    for (const ClassDecl* c : ordered_classes()) {
      out_ << "struct " << c->name << " {\n";
      for (const FieldDecl& f : c->fields) {
        out_ << "  " << c_field_type(f) << " " << f.name;
        if (f.list_len) out_ << '[' << *f.list_len << ']';
        out_ << ";\n";
      }
      out_ << "};\n\n";
    }
  }

  void emit_domain_arrays() {
    for (const ClassDecl* c : ordered_classes()) {
      for (const FieldDecl& f : c->fields) {
        if (!f.domain) continue;
        const bool is_int = f.base == BaseKind::Int;
        if (is_int && !f.unique) continue;  // constrained by a range assumption instead
        std::vector<std::string> values;
        if (is_int) {
          for (std::int64_t v = f.domain->lo; v < f.domain->hi; ++v) values.push_back(std::to_string(v));
        } else {
          for (const auto& v : f.domain->values) values.push_back(c_string(std::get<std::string>(v)));
        }
        out_ << "static " << (is_int ? "int " : "const char * ") << array_name(*c, f) << "[] =\n  {";
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? ", " : "") << values[i];
        out_ << "};\n";
        if (f.unique) out_ << "static bool " << array_name(*c, f) << "_used[" << values.size() << "];\n";
      }
    }
    out_ << '\n';
  }

  void emit_init_functions() {
    for (const ClassDecl* c : ordered_classes()) {
      out_ << "static void init_" << c->name << "(\n  struct " << c->name << " * instance) {\n\n";
      for (const FieldDecl& f : c->fields) {
        const std::string target = "instance->" + f.name;
        if (f.list_len) {
          out_ << "  for (size_t i = 0; i < " << *f.list_len << "; ++i) {\n"
               << "    init_" << f.class_name << "(&" << target << "[i]);\n  }\n";
        } else if (f.unique) {
          out_ << "  __CPROVER_unique_domain(\n    " << target << ",\n    " << array_name(*c, f)
               << "\n  );\n";
        } else if (f.base == BaseKind::Str) {
          out_ << "  __CPROVER_domain(\n    " << target << ",\n    " << array_name(*c, f) << "\n  );\n";
        } else {
          out_ << "  __CPROVER_assume(" << target << " >= " << f.domain->lo << " && " << target
               << " < " << f.domain->hi << ");\n";
        }
      }
      out_ << "}\n\n";
    }
  }

  std::string c_type(const Type& t) const {
    switch (t.kind) {
      case Type::Kind::Int: return "int";
      case Type::Kind::Str: return "const char *";
      case Type::Kind::Bool: return "bool";
      case Type::Kind::Object: return "struct " + t.class_name;
      default: throw EmitError("local of unsupported type");
    }
  }

  std::string fresh(const std::string& base) {
    std::string name = kCKeywords.count(base) != 0 || base.rfind("__", 0) == 0 ? base + "_" : base;
    if (used_names_.insert(name).second) return name;
    for (int k = 2;; ++k) {
      const std::string candidate = name + "_" + std::to_string(k);
      if (used_names_.insert(candidate).second) return candidate;
    }
  }

  static bool compound(const Expr& e) {
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

  std::string operand(const Expr& e) const {
    return compound(e) ? "(" + expr(e) + ")" : expr(e);
  }

  std::string expr(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::IntLit: return std::to_string(e.int_value);
      case ExprKind::StrLit: return c_string(e.text);
      case ExprKind::LocalRef: {
        const auto& b = locals_.at(e.text);
        return b;
      }
      case ExprKind::FieldAccess: return operand(e.args[0]) + "." + e.text;
      case ExprKind::Index: return operand(e.args[0]) + "[" + std::to_string(e.int_value) + "]";
      case ExprKind::Nondet: return "__CPROVER_nondet_element(" + expr(e.args[0]) + ")";
      case ExprKind::Abs: return "abs(" + expr(e.args[0]) + ")";
      case ExprKind::Binary:
        return operand(e.args[0]) + " " + std::string(frontend::to_string(e.binary_op)) + " " +
               operand(e.args[1]);
      case ExprKind::Compare:
        return operand(e.args[0]) + " " + std::string(frontend::to_string(e.compare_op)) + " " +
               operand(e.args[1]);
      case ExprKind::BoolOp: {
        const std::string op = e.bool_op == frontend::BoolOpKind::And ? " && " : " || ";
        std::string s;
        for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? op : "") + operand(e.args[i]);
        return s;
      }
      case ExprKind::Not: return "!" + operand(e.args[0]);
    }
    throw EmitError("unhandled expression");
  }

  void emit_validate() {
    const auto& fn = program_.entry();
    used_names_.clear();
    locals_.clear();
    const std::string param = fresh(fn.param_name);
    locals_[fn.param_name] = param;
    out_ << "static void validate(\n  struct " << fn.param_type << " " << param << ") {\n\n";
    std::map<std::string, std::string> local_types;  // DSL name -> C type of its current variable
    for (const Stmt& s : fn.body) {
      if (s.kind != Stmt::Kind::Assign) {
        out_ << "  __CPROVER_assume(" << expr(s.value) << ");\n";
        continue;
      }
      if (s.value.type.kind == Type::Kind::List) {
        locals_[s.target] = operand(s.value);
        local_types.erase(s.target);
        continue;
      }
      const std::string type = c_type(s.value.type);
      const std::string value = expr(s.value);
      const auto it = local_types.find(s.target);
      if (it != local_types.end() && it->second == type) {
        out_ << "  " << locals_.at(s.target) << " = " << value << ";\n";
        continue;
      }
      const std::string name = fresh(s.target);
      out_ << "  " << type << " " << name << " = " << value << ";\n";
      locals_[s.target] = name;
      local_types[s.target] = type;
    }
    out_ << "}\n\n";
  }

  void emit_main() {
    const std::string& cls = program_.entry_class().name;
    out_ << "int main(void) {\n"
         << "  struct " << cls << " solution;\n"
         << "  init_" << cls << "(&solution);\n"
         << "  validate(solution);\n\n"
         << "  __CPROVER_output(\"solution\", solution);\n"
         << "  __CPROVER_assert(false, \"\");\n"
         << "}\n";
  }

  const CheckedProgram& program_;
  std::ostringstream out_;
  std::set<std::string> used_names_;
  std::map<std::string, std::string> locals_;
};

}  // namespace

CHarness emit(const CheckedProgram& program) { return Emitter(program).run(); }

}  // namespace logic_forge::cemit
