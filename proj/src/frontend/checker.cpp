#include "logic_forge/frontend/checker.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "logic_forge/frontend/parser.hpp"
#include "logic_forge/frontend/printer.hpp"

namespace logic_forge::frontend {

namespace {

constexpr std::int64_t kMaxAbsValue = std::int64_t{1} << 31;

std::string type_name(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Unknown: return "unknown";
    case Type::Kind::Int: return "int";
    case Type::Kind::Str: return "str";
    case Type::Kind::Bool: return "bool";
    case Type::Kind::Object: return t.class_name;
    case Type::Kind::List:
      return "list[" + t.class_name + ", " + std::to_string(t.list_len) + "]";
  }
  return "?";
}

class Checker {
 public:
  explicit Checker(const DslProgram& program) : program_(program) {}

  CheckedProgram run() {
    check_declarations();
    if (program_.functions.empty()) {
      fail(SemanticCategory::NoEntryFunction, SourcePos{},
           "program defines no validation function");
    }
    if (program_.functions.size() > 1) {
      fail(SemanticCategory::MultipleEntryFunctions, program_.functions[1].pos,
           "program defines " + std::to_string(program_.functions.size()) +
               " functions; exactly one validation function is allowed");
    }
    CheckedProgram checked;
    checked.program = program_;
    check_function(checked.program.functions.front());
    return checked;
  }

 private:
  [[noreturn]] void fail(SemanticCategory category, SourcePos pos,
                         const std::string& message) const {
    throw SemanticError(category, program_.origin, pos, message);
  }

  void check_declarations() {
    std::set<std::string> class_names;
    for (const ClassDecl& c : program_.classes) {
      if (!class_names.insert(c.name).second) {
        fail(SemanticCategory::DuplicateName, c.pos, "class '" + c.name + "' is defined twice");
      }
    }
    for (const ClassDecl& c : program_.classes) {
      std::set<std::string> field_names;
      for (const FieldDecl& f : c.fields) {
        if (!field_names.insert(f.name).second) {
          fail(SemanticCategory::DuplicateName, f.pos,
               "field '" + f.name + "' is declared twice in class '" + c.name + "'");
        }
        check_field(c, f);
      }
    }
  }

  void check_field(const ClassDecl& owner, const FieldDecl& f) {
    const std::string where = "field '" + owner.name + "." + f.name + "'";
    if (f.base == BaseKind::ClassRef) {
      const ClassDecl* target = program_.find_class(f.class_name);
      if (target == nullptr) {
        fail(SemanticCategory::UnknownName, f.pos, "unknown class '" + f.class_name + "' in " + where);
      }
      if (f.unique) {
        fail(SemanticCategory::UniqueWithoutDomain, f.pos,
             where + ": Unique requires a scalar field with a Domain");
      }
      if (f.domain) fail(SemanticCategory::TypeMismatch, f.pos, where + ": Domain of a class type");
      if (!f.list_len) {
        fail(SemanticCategory::TypeMismatch, f.pos,
             where + ": nested objects must be declared as list[" + f.class_name + ", N]");
      }
      for (const FieldDecl& inner : target->fields) {
        if (!inner.is_scalar()) {
          fail(SemanticCategory::TypeMismatch, inner.pos,
               "class '" + target->name + "' is used as a list element and may only have "
               "int or str fields");
        }
      }
      return;
    }
    if (f.list_len) {
      fail(SemanticCategory::TypeMismatch, f.pos, where + ": lists of scalar values are not supported");
    }
    if (!f.domain) {
      if (f.unique) {
        fail(SemanticCategory::UniqueWithoutDomain, f.pos,
             where + ": Unique requires a Domain so the solver has finitely many values");
      }
      fail(SemanticCategory::UnboundedField, f.pos,
           where + " has no Domain; every solution field needs a finite domain");
    }
    const DomainSpec& d = *f.domain;
    if (f.base == BaseKind::Int) {
      if (d.kind != DomainSpec::Kind::Range) {
        fail(SemanticCategory::TypeMismatch, f.pos, where + ": int domains must be range(lo, hi)");
      }
      if (d.lo >= d.hi) {
        fail(SemanticCategory::TypeMismatch, f.pos, where + ": empty range(" +
                                                        std::to_string(d.lo) + ", " +
                                                        std::to_string(d.hi) + ")");
      }
      if (d.lo < -kMaxAbsValue || d.hi > kMaxAbsValue) {
        fail(SemanticCategory::UnboundedField, f.pos, where + ": range bounds exceed 2^31");
      }
      if (d.hi - d.lo > kMaxDomainSize) {
        fail(SemanticCategory::UnboundedField, f.pos,
             where + ": domain has more than " + std::to_string(kMaxDomainSize) + " values");
      }
      return;
    }
    if (d.kind != DomainSpec::Kind::Values) {
      fail(SemanticCategory::TypeMismatch, f.pos, where + ": str domains must list string values");
    }
    std::set<std::string> seen;
    for (const Literal& lit : d.values) {
      const auto* s = std::get_if<std::string>(&lit);
      if (s == nullptr) {
        fail(SemanticCategory::TypeMismatch, f.pos, where + ": str domain contains a non-string value");
      }
      if (!seen.insert(*s).second) {
        fail(SemanticCategory::TypeMismatch, f.pos, where + ": duplicate domain value " + quote_string(*s));
      }
    }
  }

  const FieldDecl& lookup_field(const std::string& class_name, const std::string& field,
                                SourcePos pos) const {
    const ClassDecl* decl = program_.find_class(class_name);
    const FieldDecl* f = decl == nullptr ? nullptr : decl->find_field(field);
    if (f == nullptr) {
      fail(SemanticCategory::UnknownName, pos,
           "class '" + class_name + "' has no field '" + field + "'");
    }
    return *f;
  }

  void check_function(FuncDecl& fn) {
    if (program_.find_class(fn.param_type) == nullptr) {
      fail(SemanticCategory::UnknownName, fn.pos,
           "parameter type '" + fn.param_type + "' is not a declared class");
    }
    locals_.clear();
    Type param = Type::make(Type::Kind::Object);
    param.class_name = fn.param_type;
    locals_[fn.param_name] = param;
    for (Stmt& s : fn.body) {
      const Type t = check_expr(s.value);
      switch (s.kind) {
        case Stmt::Kind::Assign:
          if (s.target == fn.param_name) {
            fail(SemanticCategory::TypeMismatch, s.pos,
                 "cannot reassign the solution parameter '" + fn.param_name + "'");
          }
          locals_[s.target] = t;
          break;
        case Stmt::Kind::Assume:
        case Stmt::Kind::Assert:
          if (t.kind != Type::Kind::Bool) {
            fail(SemanticCategory::TypeMismatch, s.value.pos,
                 std::string(s.kind == Stmt::Kind::Assume ? "assume" : "assert") +
                     " needs a boolean condition, got " + type_name(t));
          }
          break;
      }
    }
  }

  Type check_expr(Expr& e) {
    e.type = infer(e);
    return e.type;
  }

  void expect_kind(const Expr& e, Type::Kind kind, const std::string& context) const {
    if (e.type.kind != kind) {
      fail(SemanticCategory::TypeMismatch, e.pos,
           context + " expects " + type_name(Type::make(kind)) + ", got " + type_name(e.type));
    }
  }

  Type infer(Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return Type::make(Type::Kind::Int);
      case ExprKind::StrLit: {
        Type t = Type::make(Type::Kind::Str);
        t.literal = e.text;
        return t;
      }
      case ExprKind::LocalRef: {
        auto it = locals_.find(e.text);
        if (it == locals_.end()) {
          fail(SemanticCategory::UnknownName, e.pos, "unknown name '" + e.text + "'");
        }
        return it->second;
      }
      case ExprKind::FieldAccess: {
        const Type obj = check_expr(e.args[0]);
        if (obj.kind != Type::Kind::Object) {
          fail(SemanticCategory::TypeMismatch, e.pos,
               "field access '." + e.text + "' on a value of type " + type_name(obj));
        }
        const FieldDecl& f = lookup_field(obj.class_name, e.text, e.pos);
        if (f.list_len) {
          Type t = Type::make(Type::Kind::List);
          t.class_name = f.class_name;
          t.list_len = *f.list_len;
          return t;
        }
        Type t = Type::make(f.base == BaseKind::Int ? Type::Kind::Int : Type::Kind::Str);
        t.owner_class = obj.class_name;
        t.field = f.name;
        return t;
      }
      case ExprKind::Index: {
        const Type list = check_expr(e.args[0]);
        if (list.kind != Type::Kind::List) {
          fail(SemanticCategory::TypeMismatch, e.pos, "indexing a value of type " + type_name(list));
        }
        if (e.int_value < 0 || e.int_value >= list.list_len) {
          fail(SemanticCategory::ValueOutsideDomain, e.pos,
               "index " + std::to_string(e.int_value) + " is out of bounds for " + type_name(list));
        }
        Type t = Type::make(Type::Kind::Object);
        t.class_name = list.class_name;
        return t;
      }
      case ExprKind::Nondet: {
        const Type list = check_expr(e.args[0]);
        if (list.kind != Type::Kind::List) {
          fail(SemanticCategory::BadNondetTarget, e.pos,
               "nondet() needs a fixed-size list, got " + type_name(list));
        }
        Type t = Type::make(Type::Kind::Object);
        t.class_name = list.class_name;
        return t;
      }
      case ExprKind::Abs:
        check_expr(e.args[0]);
        expect_kind(e.args[0], Type::Kind::Int, "abs()");
        return Type::make(Type::Kind::Int);
      case ExprKind::Binary:
        for (Expr& a : e.args) {
          check_expr(a);
          expect_kind(a, Type::Kind::Int, "operator '" + std::string(to_string(e.binary_op)) + "'");
        }
        return Type::make(Type::Kind::Int);
      case ExprKind::Compare:
        check_compare(e);
        return Type::make(Type::Kind::Bool);
      case ExprKind::BoolOp:
        for (Expr& a : e.args) {
          check_expr(a);
          expect_kind(a, Type::Kind::Bool, "'" + std::string(to_string(e.bool_op)) + "'");
        }
        return Type::make(Type::Kind::Bool);
      case ExprKind::Not:
        check_expr(e.args[0]);
        expect_kind(e.args[0], Type::Kind::Bool, "'not'");
        return Type::make(Type::Kind::Bool);
    }
    return {};
  }

  const DomainSpec& str_domain(const Type& t, SourcePos pos) const {
    return *lookup_field(t.owner_class, t.field, pos).domain;
  }

  void check_compare(Expr& e) {
    const Type lhs = check_expr(e.args[0]);
    const Type rhs = check_expr(e.args[1]);
    const std::string op(to_string(e.compare_op));
    const bool ordering = e.compare_op != CompareOp::Eq && e.compare_op != CompareOp::Ne;
    if (lhs.kind == Type::Kind::Int && rhs.kind == Type::Kind::Int) return;
    if (lhs.kind != Type::Kind::Str || rhs.kind != Type::Kind::Str) {
      fail(SemanticCategory::TypeMismatch, e.pos,
           "cannot compare " + type_name(lhs) + " " + op + " " + type_name(rhs));
    }
    if (ordering) {
      fail(SemanticCategory::TypeMismatch, e.pos, "operator '" + op + "' is only defined for int");
    }
    if (lhs.literal && rhs.literal) {
      fail(SemanticCategory::TypeMismatch, e.pos,
           "comparison of two string literals; compare a field against a literal");
    }
    if (lhs.literal || rhs.literal) {
      const Type& field = lhs.literal ? rhs : lhs;
      const std::string& value = lhs.literal ? *lhs.literal : *rhs.literal;
      const DomainSpec& d = str_domain(field, e.pos);
      const bool member = std::any_of(d.values.begin(), d.values.end(), [&](const Literal& v) {
        return std::get<std::string>(v) == value;
      });
      if (!member) {
        fail(SemanticCategory::ValueOutsideDomain, (lhs.literal ? e.args[0] : e.args[1]).pos,
             quote_string(value) + " is not in the domain of '" + field.owner_class + "." +
                 field.field + "'");
      }
      return;
    }
    if (str_domain(lhs, e.pos) != str_domain(rhs, e.pos)) {
      fail(SemanticCategory::TypeMismatch, e.pos,
           "fields '" + lhs.owner_class + "." + lhs.field + "' and '" + rhs.owner_class + "." +
               rhs.field + "' have different domains and cannot be compared");
    }
  }

  const DslProgram& program_;
  std::map<std::string, Type> locals_;
};

}  // namespace

CheckedProgram check(const DslProgram& program) { return Checker(program).run(); }

CheckedProgram parse_and_check(const SourceText& source) { return check(parse(source)); }

}  // namespace logic_forge::frontend
