#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace logic_forge::model {

using Value = std::int64_t;
using VarId = int;
using SelectorId = int;

/// Finite domain of a variable: a half-open integer range, or an ordered set of
/// string labels coded as 0..k-1 in declaration order.
struct VarDomain {
  enum class Kind { IntRange, Enum };

  Kind kind = Kind::IntRange;
  Value lo = 0;
  Value hi = 0;  // exclusive
  std::vector<std::string> labels;

  static VarDomain range(Value lo, Value hi);
  static VarDomain enumeration(std::vector<std::string> labels);

  std::size_t size() const;
  Value min() const { return kind == Kind::IntRange ? lo : 0; }
  Value max() const { return kind == Kind::IntRange ? hi - 1 : static_cast<Value>(labels.size()) - 1; }
  bool contains(Value v) const { return v >= min() && v <= max(); }
  std::optional<Value> code_of(const std::string& label) const;

  friend bool operator==(const VarDomain&, const VarDomain&) = default;
};

struct Var {
  VarId id = 0;
  std::string name;
  VarDomain domain;
};

/// Instances of one class materialised from a list field of the solution
/// class (or the solution object itself for its scalar fields).
struct InstanceGroup {
  std::string name;        // list field name, or the parameter name for the root
  std::string class_name;
  std::vector<std::string> fields;
  std::vector<std::vector<VarId>> vars;  // [instance][field]
  /// Unique int field that orders rows when decoding. Only set when the
  /// validator never indexes this list directly, so instances are
  /// interchangeable.
  std::optional<std::size_t> position_field;
  bool indexed = false;
  bool is_list = true;

  std::size_t instance_count() const { return vars.size(); }
  std::optional<std::size_t> field_index(const std::string& field) const;
};

/// Existential index introduced by one `nondet(list)` call site.
struct SelectorVar {
  SelectorId id = 0;
  std::string name;
  std::size_t group = 0;
  int list_len = 0;
  std::string element_class;
};

enum class Op { Const, Var, Elem, Abs, Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not };

std::string_view to_string(Op op);
bool is_boolean(Op op);

/// Constraint expression tree. Strings are already coded as integers and
/// booleans evaluate to 0/1.
struct ConstraintExpr {
  Op op = Op::Const;
  Value value = 0;        // Const
  VarId var = -1;         // Var
  SelectorId selector = -1;  // Elem
  std::size_t field = 0;  // Elem: field index within the selector's group
  std::vector<ConstraintExpr> args;

  static ConstraintExpr constant(Value v);
  static ConstraintExpr var_ref(VarId v);
  static ConstraintExpr elem(SelectorId s, std::size_t field);
  static ConstraintExpr unary(Op op, ConstraintExpr arg);
  static ConstraintExpr binary(Op op, ConstraintExpr lhs, ConstraintExpr rhs);
  static ConstraintExpr nary(Op op, std::vector<ConstraintExpr> args);

  friend bool operator==(const ConstraintExpr&, const ConstraintExpr&) = default;
};

struct ConstraintModel {
  std::vector<Var> vars;
  std::vector<SelectorVar> selectors;
  std::vector<InstanceGroup> groups;
  std::vector<std::vector<VarId>> alldiff_groups;
  std::vector<ConstraintExpr> constraints;  // conjunction
  std::size_t primary_group = 0;

  const InstanceGroup& group_of(SelectorId s) const { return groups[selectors[s].group]; }
  /// Var behind `elem(s, field)` when the selector takes `index`.
  VarId elem_var(SelectorId s, std::size_t field, Value index) const {
    return group_of(s).vars[static_cast<std::size_t>(index)][field];
  }
};

/// Total assignment: one value per var (enum vars hold codes) and one index
/// per selector.
struct Assignment {
  std::vector<Value> vars;
  std::vector<Value> selectors;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Structural validation: ids in range, alldiff groups over one shared
/// domain, boolean roots. Throws InternalError.
void validate_model(const ConstraintModel& model);

}  // namespace logic_forge::model
