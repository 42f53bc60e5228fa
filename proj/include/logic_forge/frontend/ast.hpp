#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "logic_forge/frontend/diagnostics.hpp"

namespace logic_forge::frontend {

/// Source text handed to the frontend. `origin` labels diagnostics.
struct SourceText {
  std::string text;
  std::string origin = "<input>";
};

using Literal = std::variant<std::int64_t, std::string>;

/// `range(lo, hi)` (half-open) or an explicit literal list.
struct DomainSpec {
  enum class Kind { Range, Values };

  Kind kind = Kind::Range;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<Literal> values;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

enum class BaseKind { Int, Str, ClassRef };

struct FieldDecl {
  std::string name;
  BaseKind base = BaseKind::Int;
  std::string class_name;  // set when base == ClassRef
  bool unique = false;
  std::optional<DomainSpec> domain;
  std::optional<std::int64_t> list_len;
  SourcePos pos;

  bool is_scalar() const { return base != BaseKind::ClassRef && !list_len; }
};

struct ClassDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  SourcePos pos;

  const FieldDecl* find_field(const std::string& field) const;
  std::optional<std::size_t> field_index(const std::string& field) const;
};

/// Type attached to expressions by the checker.
struct Type {
  enum class Kind { Unknown, Int, Str, Bool, Object, List };

  Kind kind = Kind::Unknown;
  std::string class_name;  // Object: its class; List: element class
  std::int64_t list_len = 0;
  // Str values either come from a field (whose domain constrains them) or
  // from a literal.
  std::string owner_class;
  std::string field;
  std::optional<std::string> literal;

  static Type make(Kind kind) {
    Type t;
    t.kind = kind;
    return t;
  }
};

enum class ExprKind {
  IntLit,
  StrLit,
  LocalRef,
  FieldAccess,
  Index,
  Nondet,
  Abs,
  Binary,
  Compare,
  BoolOp,
  Not,
};

enum class BinaryOp { Add, Sub, Mul };
enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class BoolOpKind { And, Or };

std::string_view to_string(BinaryOp op);
std::string_view to_string(CompareOp op);
std::string_view to_string(BoolOpKind op);

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  SourcePos pos;
  std::int64_t int_value = 0;  // IntLit value, Index position
  std::string text;            // StrLit value, LocalRef name, FieldAccess field
  BinaryOp binary_op = BinaryOp::Add;
  CompareOp compare_op = CompareOp::Eq;
  BoolOpKind bool_op = BoolOpKind::And;
  std::vector<Expr> args;
  Type type;  // filled in by check()

  static Expr int_lit(std::int64_t value, SourcePos pos = {});
  static Expr str_lit(std::string value, SourcePos pos = {});
  static Expr local(std::string name, SourcePos pos = {});
  static Expr field(Expr object, std::string name, SourcePos pos = {});
  static Expr index(Expr list, std::int64_t position, SourcePos pos = {});
  static Expr nondet(Expr list, SourcePos pos = {});
  static Expr abs(Expr arg, SourcePos pos = {});
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos pos = {});
  static Expr compare(CompareOp op, Expr lhs, Expr rhs, SourcePos pos = {});
  static Expr bool_op_of(BoolOpKind op, std::vector<Expr> operands, SourcePos pos = {});
  static Expr negate(Expr arg, SourcePos pos = {});
};

struct Stmt {
  enum class Kind { Assign, Assume, Assert };

  Kind kind = Kind::Assume;
  std::string target;  // Assign only
  Expr value;
  SourcePos pos;
};

struct FuncDecl {
  std::string name;
  std::string param_name;
  std::string param_type;
  std::vector<Stmt> body;
  SourcePos pos;
};

struct DslProgram {
  std::string origin = "<input>";
  std::vector<ClassDecl> classes;
  std::vector<FuncDecl> functions;

  const ClassDecl* find_class(const std::string& name) const;
};

/// A program that passed check(): exactly one entry function and every
/// expression annotated with its type.
struct CheckedProgram {
  DslProgram program;

  const FuncDecl& entry() const { return program.functions.front(); }
  const ClassDecl& entry_class() const;
  const ClassDecl& class_named(const std::string& name) const;
};

/// Structural equality ignoring source positions and type annotations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const DslProgram& a, const DslProgram& b);

}  // namespace logic_forge::frontend
