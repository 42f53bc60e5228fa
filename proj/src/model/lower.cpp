#include "logic_forge/model/lower.hpp"

#include <map>
#include <utility>

namespace logic_forge::model {

using frontend::BaseKind;
using frontend::CheckedProgram;
using frontend::ClassDecl;
using frontend::CompareOp;
using frontend::DomainSpec;
using frontend::Expr;
using frontend::ExprKind;
using frontend::FieldDecl;
using frontend::Stmt;
using frontend::Type;

std::vector<Stmt> rewrite_assert_as_assume(std::vector<Stmt> stmts) {
  for (Stmt& s : stmts) {
    if (s.kind == Stmt::Kind::Assert) s.kind = Stmt::Kind::Assume;
  }
  return stmts;
}

namespace {

VarDomain domain_of(const FieldDecl& f) {
  const DomainSpec& d = *f.domain;
  if (f.base == BaseKind::Int) return VarDomain::range(d.lo, d.hi);
  std::vector<std::string> labels;
  labels.reserve(d.values.size());
  for (const auto& v : d.values) labels.push_back(std::get<std::string>(v));
  return VarDomain::enumeration(std::move(labels));
}

/// Value of a lowered DSL expression.
struct Bound {
  enum class Kind { Term, StrLiteral, Object, List };

  Kind kind = Kind::Term;
  ConstraintExpr term;
  std::string literal;
  std::size_t group = 0;
  int instance = -1;           // Object at a fixed instance
  SelectorId selector = -1;    // Object chosen by nondet
  bool root = false;           // the solution object itself
};

class Lowering {
 public:
  explicit Lowering(const CheckedProgram& program) : program_(program) {}

  ConstraintModel run() {
    materialise();
    build_alldiff_groups();
    const auto body = rewrite_assert_as_assume(program_.entry().body);
    locals_.clear();
    Bound root;
    root.kind = Bound::Kind::Object;
    root.root = true;
    locals_[program_.entry().param_name] = root;
    for (const Stmt& s : body) {
      if (s.kind == Stmt::Kind::Assign) {
        pending_name_ = s.target;
        locals_[s.target] = lower_value(s.value);
        pending_name_.clear();
      } else {
        model_.constraints.push_back(lower_bool(s.value));
      }
    }
    assign_position_fields();
    validate_model(model_);
    return std::move(model_);
  }

 private:
  VarId new_var(std::string name, VarDomain domain) {
    Var v;
    v.id = static_cast<VarId>(model_.vars.size());
    v.name = std::move(name);
    v.domain = std::move(domain);
    model_.vars.push_back(std::move(v));
    return model_.vars.back().id;
  }

  void materialise() {
    const ClassDecl& entry = program_.entry_class();
    const std::string& param = program_.entry().param_name;
    std::optional<std::size_t> first_list;
    for (const FieldDecl& f : entry.fields) {
      if (f.list_len) {
        const ClassDecl& element = program_.class_named(f.class_name);
        InstanceGroup g;
        g.name = f.name;
        g.class_name = element.name;
        for (const FieldDecl& ef : element.fields) g.fields.push_back(ef.name);
        for (std::int64_t i = 0; i < *f.list_len; ++i) {
          std::vector<VarId> inst;
          for (const FieldDecl& ef : element.fields) {
            inst.push_back(new_var(f.name + "[" + std::to_string(i) + "]." + ef.name, domain_of(ef)));
          }
          g.vars.push_back(std::move(inst));
        }
        list_groups_[f.name] = model_.groups.size();
        if (!first_list) first_list = model_.groups.size();
        model_.groups.push_back(std::move(g));
        continue;
      }
      if (!root_group_) {
        InstanceGroup g;
        g.name = param;
        g.class_name = entry.name;
        g.is_list = false;
        g.vars.emplace_back();
        root_group_ = model_.groups.size();
        model_.groups.push_back(std::move(g));
      }
      InstanceGroup& root = model_.groups[*root_group_];
      root.fields.push_back(f.name);
      root.vars[0].push_back(new_var(param + "." + f.name, domain_of(f)));
    }
    model_.primary_group = first_list.value_or(root_group_.value_or(0));
  }

  void build_alldiff_groups() {
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const InstanceGroup& g : model_.groups) {
      const ClassDecl& decl = program_.class_named(g.class_name);
      for (std::size_t fi = 0; fi < g.fields.size(); ++fi) {
        if (!decl.find_field(g.fields[fi])->unique) continue;
        const auto key = std::make_pair(g.class_name, g.fields[fi]);
        auto it = index.find(key);
        if (it == index.end()) {
          it = index.emplace(key, model_.alldiff_groups.size()).first;
          model_.alldiff_groups.emplace_back();
        }
        for (const auto& inst : g.vars) model_.alldiff_groups[it->second].push_back(inst[fi]);
      }
    }
  }

  void assign_position_fields() {
    for (InstanceGroup& g : model_.groups) {
      if (!g.is_list || g.indexed) continue;
      const ClassDecl& decl = program_.class_named(g.class_name);
      std::optional<std::size_t> found;
      int count = 0;
      for (std::size_t fi = 0; fi < g.fields.size(); ++fi) {
        const FieldDecl* f = decl.find_field(g.fields[fi]);
        if (f->unique && f->base == BaseKind::Int) {
          found = fi;
          ++count;
        }
      }
      if (count == 1) g.position_field = found;
    }
  }

  [[noreturn]] void internal(const Expr& e, const std::string& what) const {
    throw InternalError(program_.program.origin + ":" + std::to_string(e.pos.line) + ":" +
                        std::to_string(e.pos.column) + ": " + what);
  }

  Bound term(ConstraintExpr t) const {
    Bound b;
    b.kind = Bound::Kind::Term;
    b.term = std::move(t);
    return b;
  }

  Bound access_field(const Bound& obj, const Expr& e) {
    if (obj.root) {
      if (auto it = list_groups_.find(e.text); it != list_groups_.end()) {
        Bound b;
        b.kind = Bound::Kind::List;
        b.group = it->second;
        return b;
      }
      if (!root_group_) internal(e, "root object has no scalar fields");
      const InstanceGroup& g = model_.groups[*root_group_];
      const auto fi = g.field_index(e.text);
      if (!fi) internal(e, "unknown root field " + e.text);
      return term(ConstraintExpr::var_ref(g.vars[0][*fi]));
    }
    const InstanceGroup& g = model_.groups[obj.group];
    const auto fi = g.field_index(e.text);
    if (!fi) internal(e, "unknown field " + e.text);
    if (obj.selector >= 0) return term(ConstraintExpr::elem(obj.selector, *fi));
    return term(ConstraintExpr::var_ref(g.vars[static_cast<std::size_t>(obj.instance)][*fi]));
  }

  Bound lower_value(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return term(ConstraintExpr::constant(e.int_value));
      case ExprKind::StrLit: {
        Bound b;
        b.kind = Bound::Kind::StrLiteral;
        b.literal = e.text;
        return b;
      }
      case ExprKind::LocalRef: {
        auto it = locals_.find(e.text);
        if (it == locals_.end()) internal(e, "unbound local " + e.text);
        return it->second;
      }
      case ExprKind::FieldAccess: {
        const Bound obj = lower_value(e.args[0]);
        if (obj.kind != Bound::Kind::Object) internal(e, "field access on a non-object");
        return access_field(obj, e);
      }
      case ExprKind::Index: {
        const Bound list = lower_value(e.args[0]);
        if (list.kind != Bound::Kind::List) internal(e, "index on a non-list");
        model_.groups[list.group].indexed = true;
        Bound b;
        b.kind = Bound::Kind::Object;
        b.group = list.group;
        b.instance = static_cast<int>(e.int_value);
        return b;
      }
      case ExprKind::Nondet: {
        const Bound list = lower_value(e.args[0]);
        if (list.kind != Bound::Kind::List) internal(e, "nondet on a non-list");
        const InstanceGroup& g = model_.groups[list.group];
        SelectorVar s;
        s.id = static_cast<SelectorId>(model_.selectors.size());
        s.name = pending_name_.empty()
                     ? "nondet@" + std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column)
                     : pending_name_;
        s.group = list.group;
        s.list_len = static_cast<int>(g.instance_count());
        s.element_class = g.class_name;
        model_.selectors.push_back(s);
        Bound b;
        b.kind = Bound::Kind::Object;
        b.group = list.group;
        b.selector = s.id;
        return b;
      }
      case ExprKind::Abs:
        return term(ConstraintExpr::unary(Op::Abs, lower_int(e.args[0])));
      case ExprKind::Binary: {
        const Op op = e.binary_op == frontend::BinaryOp::Add   ? Op::Add
                      : e.binary_op == frontend::BinaryOp::Sub ? Op::Sub
                                                               : Op::Mul;
        return term(ConstraintExpr::binary(op, lower_int(e.args[0]), lower_int(e.args[1])));
      }
      case ExprKind::Compare:
      case ExprKind::BoolOp:
      case ExprKind::Not:
        return term(lower_bool(e));
    }
    internal(e, "unhandled expression");
  }

  ConstraintExpr lower_int(const Expr& e) {
    Bound b = lower_value(e);
    if (b.kind != Bound::Kind::Term) internal(e, "expected an integer expression");
    return std::move(b.term);
  }

  // String operands lower to enum codes; a literal is coded in the domain of
  // the field it is compared against.
  ConstraintExpr lower_str_operand(const Expr& e, const Expr& other) {
    Bound b = lower_value(e);
    if (b.kind == Bound::Kind::Term) return std::move(b.term);
    if (b.kind != Bound::Kind::StrLiteral) internal(e, "expected a string expression");
    const Type& field_type = other.type;
    const FieldDecl* f = program_.class_named(field_type.owner_class).find_field(field_type.field);
    if (f == nullptr) internal(e, "string literal compared against a non-field");
    const auto code = domain_of(*f).code_of(b.literal);
    if (!code) internal(e, "literal outside its field domain");
    return ConstraintExpr::constant(*code);
  }

  ConstraintExpr lower_bool(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Compare: {
        static constexpr Op kOps[] = {Op::Eq, Op::Ne, Op::Lt, Op::Le, Op::Gt, Op::Ge};
        const Op op = kOps[static_cast<int>(e.compare_op)];
        if (e.args[0].type.kind == Type::Kind::Str) {
          return ConstraintExpr::binary(op, lower_str_operand(e.args[0], e.args[1]),
                                        lower_str_operand(e.args[1], e.args[0]));
        }
        return ConstraintExpr::binary(op, lower_int(e.args[0]), lower_int(e.args[1]));
      }
      case ExprKind::BoolOp: {
        std::vector<ConstraintExpr> args;
        for (const Expr& a : e.args) args.push_back(lower_bool(a));
        return ConstraintExpr::nary(e.bool_op == frontend::BoolOpKind::And ? Op::And : Op::Or,
                                    std::move(args));
      }
      case ExprKind::Not:
        return ConstraintExpr::unary(Op::Not, lower_bool(e.args[0]));
      case ExprKind::LocalRef: {
        Bound b = lower_value(e);
        if (b.kind != Bound::Kind::Term || !is_boolean(b.term.op)) {
          internal(e, "expected a boolean local");
        }
        return std::move(b.term);
      }
      default:
        internal(e, "expected a boolean expression");
    }
  }

  const CheckedProgram& program_;
  ConstraintModel model_;
  std::map<std::string, std::size_t> list_groups_;
  std::optional<std::size_t> root_group_;
  std::map<std::string, Bound> locals_;
  std::string pending_name_;
};

}  // namespace

ConstraintModel lower(const CheckedProgram& program) { return Lowering(program).run(); }

}  // namespace logic_forge::model
