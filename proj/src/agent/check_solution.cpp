#include "logic_forge/agent/check_solution.hpp"

#include <map>
#include <numeric>
#include <set>

namespace logic_forge::agent {

using frontend::BaseKind;
using frontend::ClassDecl;
using frontend::Expr;
using frontend::ExprKind;
using frontend::FieldDecl;
using frontend::Stmt;

namespace {

constexpr std::uint64_t kMaxTuples = 100'000'000;

/// Result of evaluating a closed validator expression.
struct Val {
  enum class Kind { Int, Str, Root, List, Row };
  Kind kind = Kind::Int;
  std::int64_t i = 0;
  std::string s;
};

class Checker {
 public:
  Checker(const frontend::CheckedProgram& program, const SolutionTable& table)
      : program_(program), table_(table) {}

  bool run() {
    shape();
    if (!values_ok()) return false;
    close_statements();
    return components_hold();
  }

 private:
  void shape() {
    const ClassDecl& root = program_.entry_class();
    for (const FieldDecl& f : root.fields) {
      if (f.list_len) {
        if (list_field_) throw ShapeError("solution class has more than one list field");
        list_field_ = &f;
      }
    }
    if (list_field_ && root.fields.size() != 1) {
      throw ShapeError("solution class mixes a list field with scalar fields");
    }
    row_class_ = list_field_ ? &program_.class_named(list_field_->class_name) : &root;
    const std::size_t rows = list_field_ ? static_cast<std::size_t>(*list_field_->list_len) : 1;
    if (table_.rows.size() != rows) {
      throw ShapeError("expected " + std::to_string(rows) + " rows, got " + std::to_string(table_.rows.size()));
    }
    if (table_.columns.size() != row_class_->fields.size()) throw ShapeError("column count mismatch");
    for (const FieldDecl& f : row_class_->fields) {
      const auto c = table_.column_index(f.name);
      if (!c) throw ShapeError("table has no column '" + f.name + "'");
      column_of_[f.name] = *c;
    }
    for (const auto& row : table_.rows) {
      if (row.size() != table_.columns.size()) throw ShapeError("ragged row");
      for (const FieldDecl& f : row_class_->fields) {
        const Cell& cell = row[column_of_[f.name]];
        const bool is_int = std::holds_alternative<std::int64_t>(cell);
        if (is_int != (f.base == BaseKind::Int)) throw ShapeError("cell type mismatch in column '" + f.name + "'");
      }
    }
  }

  bool values_ok() const {
    for (const FieldDecl& f : row_class_->fields) {
      const std::size_t c = column_of_.at(f.name);
      std::set<Cell> seen;
      for (const auto& row : table_.rows) {
        const Cell& cell = row[c];
        if (f.domain) {
          if (const auto* i = std::get_if<std::int64_t>(&cell)) {
            if (*i < f.domain->lo || *i >= f.domain->hi) return false;
          } else {
            bool member = false;
            for (const auto& v : f.domain->values) member = member || std::get<std::string>(v) == std::get<std::string>(cell);
            if (!member) return false;
          }
        }
        if (f.unique && !seen.insert(cell).second) return false;
      }
    }
    return true;
  }

  // Replaces locals by their bound expressions and numbers every nondet site.
  Expr close(const Expr& e, std::map<std::string, Expr>& locals) {
    if (e.kind == ExprKind::LocalRef) {
      if (e.text == program_.entry().param_name && locals.count(e.text) == 0) return e;
      return locals.at(e.text);
    }
    Expr out = e;
    for (auto& a : out.args) a = close(a, locals);
    if (out.kind == ExprKind::Nondet) out.int_value = next_site_++;
    return out;
  }

  void close_statements() {
    std::map<std::string, Expr> locals;
    for (const Stmt& s : program_.entry().body) {
      if (s.kind == Stmt::Kind::Assign) {
        locals[s.target] = close(s.value, locals);
      } else {
        checks_.push_back(close(s.value, locals));
      }
    }
  }

  static void sites_of(const Expr& e, std::set<std::int64_t>& out) {
    if (e.kind == ExprKind::Nondet) out.insert(e.int_value);
    for (const auto& a : e.args) sites_of(a, out);
  }

  bool components_hold() {
    const std::size_t n = checks_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::set<std::int64_t>> sites(n);
    std::map<std::int64_t, std::size_t> owner;
    for (std::size_t k = 0; k < n; ++k) {
      sites_of(checks_[k], sites[k]);
      for (auto s : sites[k]) {
        auto [it, fresh] = owner.emplace(s, k);
        if (!fresh) parent[find(k)] = find(it->second);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < n; ++k) groups[find(k)].push_back(k);
    for (const auto& [root, members] : groups) {
      std::set<std::int64_t> all;
      for (auto k : members) all.insert(sites[k].begin(), sites[k].end());
      if (!component_holds(members, std::vector<std::int64_t>(all.begin(), all.end()))) return false;
    }
    return true;
  }

  bool component_holds(const std::vector<std::size_t>& members, const std::vector<std::int64_t>& sites) {
    const std::int64_t len = static_cast<std::int64_t>(table_.rows.size());
    std::uint64_t tuples = 1;
    for (std::size_t k = 0; k < sites.size(); ++k) {
      tuples *= static_cast<std::uint64_t>(len);
      if (tuples > kMaxTuples) throw std::runtime_error("check_solution: too many nondet combinations");
    }
    choice_.clear();
    for (auto s : sites) choice_[s] = 0;
    while (true) {
      bool ok = true;
      for (auto k : members) {
        if (eval(checks_[k]).i == 0) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
      std::size_t k = 0;
      for (; k < sites.size(); ++k) {
        if (++choice_[sites[k]] < len) break;
        choice_[sites[k]] = 0;
      }
      if (k == sites.size()) return false;
    }
  }

  Val cell(std::size_t row, const std::string& field) const {
    const Cell& c = table_.rows[row][column_of_.at(field)];
    Val v;
    if (const auto* i = std::get_if<std::int64_t>(&c)) {
      v.i = *i;
    } else {
      v.kind = Val::Kind::Str;
      v.s = std::get<std::string>(c);
    }
    return v;
  }

  static Val num(std::int64_t i) {
    Val v;
    v.i = i;
    return v;
  }

  Val eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return num(e.int_value);
      case ExprKind::StrLit: {
        Val v;
        v.kind = Val::Kind::Str;
        v.s = e.text;
        return v;
      }
      case ExprKind::LocalRef: {
        Val v;
        v.kind = Val::Kind::Root;
        return v;
      }
      case ExprKind::FieldAccess: {
        const Val obj = eval(e.args[0]);
        if (obj.kind == Val::Kind::Root) {
          if (list_field_) {
            Val v;
            v.kind = Val::Kind::List;
            return v;
          }
          return cell(0, e.text);
        }
        return cell(static_cast<std::size_t>(obj.i), e.text);
      }
      case ExprKind::Index: {
        Val v;
        v.kind = Val::Kind::Row;
        v.i = e.int_value;
        return v;
      }
      case ExprKind::Nondet: {
        Val v;
        v.kind = Val::Kind::Row;
        v.i = choice_.at(e.int_value);
        return v;
      }
      case ExprKind::Abs: {
        const std::int64_t x = eval(e.args[0]).i;
        return num(x < 0 ? -x : x);
      }
      case ExprKind::Binary: {
        const std::int64_t a = eval(e.args[0]).i;
        const std::int64_t b = eval(e.args[1]).i;
        switch (e.binary_op) {
          case frontend::BinaryOp::Add: return num(a + b);
          case frontend::BinaryOp::Sub: return num(a - b);
          default: return num(a * b);
        }
      }
      case ExprKind::Compare: {
        const Val a = eval(e.args[0]);
        const Val b = eval(e.args[1]);
        if (a.kind == Val::Kind::Str) {
          const bool eq = a.s == b.s;
          return num(e.compare_op == frontend::CompareOp::Eq ? eq : !eq);
        }
        switch (e.compare_op) {
          case frontend::CompareOp::Eq: return num(a.i == b.i);
          case frontend::CompareOp::Ne: return num(a.i != b.i);
          case frontend::CompareOp::Lt: return num(a.i < b.i);
          case frontend::CompareOp::Le: return num(a.i <= b.i);
          case frontend::CompareOp::Gt: return num(a.i > b.i);
          default: return num(a.i >= b.i);
        }
      }
      case ExprKind::BoolOp: {
        const bool is_and = e.bool_op == frontend::BoolOpKind::And;
        for (const auto& a : e.args) {
          const bool t = eval(a).i != 0;
          if (is_and && !t) return num(0);
          if (!is_and && t) return num(1);
        }
        return num(is_and ? 1 : 0);
      }
      case ExprKind::Not: return num(eval(e.args[0]).i == 0);
    }
    return num(0);
  }

  const frontend::CheckedProgram& program_;
  const SolutionTable& table_;
  const FieldDecl* list_field_ = nullptr;
  const ClassDecl* row_class_ = nullptr;
  std::map<std::string, std::size_t> column_of_;
  std::vector<Expr> checks_;
  std::int64_t next_site_ = 0;
  std::map<std::int64_t, std::int64_t> choice_;
};

}  // namespace

bool check_solution(const frontend::CheckedProgram& program, const SolutionTable& candidate) {
  return Checker(program, candidate).run();
}

}  // namespace logic_forge::agent
