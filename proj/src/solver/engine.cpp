#include "engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "logic_forge/solver/arith.hpp"

namespace logic_forge::solver {

using model::ConstraintExpr;
using model::Op;

namespace {

constexpr Value kMin = std::numeric_limits<Value>::min();
constexpr Value kMax = std::numeric_limits<Value>::max();
constexpr std::size_t kPairCap = 65536;
constexpr std::size_t kHallCap = 64;

ValueSet union_of(const std::vector<ValueSet>& parts) {
  std::vector<Value> all;
  bool exact = true;
  Value lo = kMax;
  Value hi = kMin;
  bool any = false;
  for (const ValueSet& p : parts) {
    if (p.empty()) continue;
    any = true;
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
    if (!p.exact || all.size() + p.vals.size() > ValueSet::kExplicitCap) {
      exact = false;
    } else if (exact) {
      all.insert(all.end(), p.vals.begin(), p.vals.end());
    }
  }
  if (!any) return ValueSet::none();
  if (!exact) return ValueSet::interval(lo, hi);
  return ValueSet::of(std::move(all));
}

Value apply(Op op, Value a, Value b) {
  switch (op) {
    case Op::Add: return sat_add(a, b);
    case Op::Sub: return sat_sub(a, b);
    default: return sat_mul(a, b);
  }
}

bool pairwise_ok(const ValueSet& a, const ValueSet& b) {
  return a.exact && b.exact && a.vals.size() * b.vals.size() <= kPairCap;
}

ValueSet arith(Op op, const ValueSet& a, const ValueSet& b) {
  if (a.empty() || b.empty()) return ValueSet::none();
  if (pairwise_ok(a, b)) {
    std::vector<Value> out;
    out.reserve(a.vals.size() * b.vals.size());
    for (Value x : a.vals) {
      for (Value y : b.vals) out.push_back(apply(op, x, y));
    }
    return ValueSet::of(std::move(out));
  }
  switch (op) {
    case Op::Add: return ValueSet::interval(sat_add(a.lo, b.lo), sat_add(a.hi, b.hi));
    case Op::Sub: return ValueSet::interval(sat_sub(a.lo, b.hi), sat_sub(a.hi, b.lo));
    default: {
      const Value c[] = {sat_mul(a.lo, b.lo), sat_mul(a.lo, b.hi), sat_mul(a.hi, b.lo),
                         sat_mul(a.hi, b.hi)};
      return ValueSet::interval(*std::min_element(std::begin(c), std::end(c)),
                                *std::max_element(std::begin(c), std::end(c)));
    }
  }
}

bool may_intersect(const ValueSet& a, const ValueSet& b) {
  if (a.empty() || b.empty() || a.hi < b.lo || b.hi < a.lo) return false;
  if (a.exact && b.exact) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.vals.size() && j < b.vals.size()) {
      if (a.vals[i] == b.vals[j]) return true;
      if (a.vals[i] < b.vals[j]) ++i; else ++j;
    }
    return false;
  }
  const ValueSet& ex = a.exact ? a : b;
  const ValueSet& other = a.exact ? b : a;
  if (!ex.exact) return true;
  return std::any_of(ex.vals.begin(), ex.vals.end(), [&](Value v) { return other.contains(v); });
}

bool any_allowed(const Domain& d, const Allowed& allowed) {
  bool found = false;
  d.for_each([&](Value v) { found = found || allowed.contains(v); });
  return found;
}

}  // namespace

struct Engine::Ctx {
  State& state;
  std::vector<int> changed;

  Domain& dom(int slot) { return state.doms[static_cast<std::size_t>(slot)]; }
  const Domain& dom(int slot) const { return state.doms[static_cast<std::size_t>(slot)]; }
  void touched(int slot) { changed.push_back(slot); }
};

Engine::Engine(const model::ConstraintModel& model, std::vector<ConstraintExpr> constraints)
    : model_(model), constraints_(std::move(constraints)),
      num_vars_(static_cast<int>(model.vars.size())) {
  watchers_.resize(model.vars.size() + model.selectors.size());
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    std::vector<int> slots;
    collect_slots(constraints_[c], slots);
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (int s : slots) watchers_[static_cast<std::size_t>(s)].push_back(static_cast<int>(c));
  }
  for (std::size_t g = 0; g < model.alldiff_groups.size(); ++g) {
    for (model::VarId v : model.alldiff_groups[g]) {
      watchers_[static_cast<std::size_t>(v)].push_back(static_cast<int>(constraints_.size() + g));
    }
  }
  permutation_column_.resize(model.groups.size());
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    const auto& group = model.groups[g];
    permutation_column_[g].assign(group.fields.size(), false);
    for (std::size_t f = 0; f < group.fields.size(); ++f) {
      std::set<model::VarId> column;
      for (const auto& inst : group.vars) column.insert(inst[f]);
      for (const auto& ad : model.alldiff_groups) {
        if (std::set<model::VarId>(ad.begin(), ad.end()) != column || column.empty()) continue;
        const auto& dom = model.vars[static_cast<std::size_t>(*column.begin())].domain;
        permutation_column_[g][f] = dom.size() == column.size();
      }
    }
  }
}

void Engine::collect_slots(const ConstraintExpr& e, std::vector<int>& out) const {
  if (e.op == Op::Var) out.push_back(e.var);
  if (e.op == Op::Elem) {
    out.push_back(selector_slot(e.selector));
    for (const auto& inst : model_.group_of(e.selector).vars) out.push_back(inst[e.field]);
  }
  for (const auto& a : e.args) collect_slots(a, out);
}

State Engine::initial_state() const {
  State s;
  s.doms.reserve(watchers_.size());
  for (const auto& v : model_.vars) s.doms.emplace_back(v.domain.min(), v.domain.max() + 1);
  for (const auto& sel : model_.selectors) s.doms.emplace_back(0, sel.list_len);
  return s;
}

bool Engine::propagate_all(State& state, Stats& stats) const {
  for (const Domain& d : state.doms) {
    if (d.empty()) return false;
  }
  std::vector<int> queue(constraints_.size() + model_.alldiff_groups.size());
  for (std::size_t i = 0; i < queue.size(); ++i) queue[i] = static_cast<int>(i);
  return run(state, std::move(queue), stats);
}

bool Engine::propagate(State& state, const std::vector<int>& changed, Stats& stats) const {
  std::vector<int> queue;
  for (int slot : changed) {
    const auto& w = watchers_[static_cast<std::size_t>(slot)];
    queue.insert(queue.end(), w.begin(), w.end());
  }
  return run(state, std::move(queue), stats);
}

bool Engine::run(State& state, std::vector<int> initial, Stats& stats) const {
  const std::size_t total = constraints_.size() + model_.alldiff_groups.size();
  std::vector<char> queued(total, 0);
  std::vector<int> queue;
  queue.reserve(total);
  for (int p : initial) {
    if (!queued[static_cast<std::size_t>(p)]) {
      queued[static_cast<std::size_t>(p)] = 1;
      queue.push_back(p);
    }
  }
  // FIFO over a vector with a moving head keeps the order deterministic.
  std::size_t head = 0;
  while (head < queue.size()) {
    const int p = queue[head++];
    queued[static_cast<std::size_t>(p)] = 0;
    ++stats.propagations;
    Ctx ctx{state, {}};
    const bool ok = static_cast<std::size_t>(p) < constraints_.size()
                        ? revise_constraint(ctx, constraints_[static_cast<std::size_t>(p)])
                        : revise_alldiff(ctx, static_cast<std::size_t>(p) - constraints_.size());
    if (!ok) return false;
    std::sort(ctx.changed.begin(), ctx.changed.end());
    ctx.changed.erase(std::unique(ctx.changed.begin(), ctx.changed.end()), ctx.changed.end());
    for (int slot : ctx.changed) {
      if (state.doms[static_cast<std::size_t>(slot)].empty()) return false;
      for (int w : watchers_[static_cast<std::size_t>(slot)]) {
        if (!queued[static_cast<std::size_t>(w)]) {
          queued[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    if (head > 4096 && head * 2 > queue.size()) {
      queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }
  return true;
}

bool Engine::revise_constraint(Ctx& ctx, const ConstraintExpr& root) const {
  const ValueSet now = eval(ctx, root);
  if (!now.contains(1)) return false;
  if (!now.contains(0)) return true;
  return narrow_bool(ctx, root, true);
}

ValueSet Engine::eval(const Ctx& ctx, const ConstraintExpr& e) const {
  switch (e.op) {
    case Op::Const: return ValueSet::single(e.value);
    case Op::Var: return ValueSet::of_domain(ctx.dom(e.var));
    case Op::Elem: {
      std::vector<ValueSet> parts;
      ctx.dom(selector_slot(e.selector)).for_each([&](Value i) {
        parts.push_back(ValueSet::of_domain(ctx.dom(model_.elem_var(e.selector, e.field, i))));
      });
      return union_of(parts);
    }
    case Op::Abs: {
      const ValueSet a = eval(ctx, e.args[0]);
      if (a.empty()) return a;
      if (a.exact) {
        std::vector<Value> out;
        for (Value v : a.vals) out.push_back(sat_abs(v));
        return ValueSet::of(std::move(out));
      }
      if (a.lo >= 0) return a;
      if (a.hi <= 0) return ValueSet::interval(sat_abs(a.hi), sat_abs(a.lo));
      return ValueSet::interval(0, std::max(sat_abs(a.lo), a.hi));
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
      return arith(e.op, eval(ctx, e.args[0]), eval(ctx, e.args[1]));
    case Op::Eq:
    case Op::Ne: {
      const ValueSet a = eval(ctx, e.args[0]);
      const ValueSet b = eval(ctx, e.args[1]);
      if (a.empty() || b.empty()) return ValueSet::none();
      const bool can_eq = may_intersect(a, b);
      const bool can_ne = !(a.singleton() && b.singleton() && *a.singleton() == *b.singleton());
      return e.op == Op::Eq ? ValueSet::booleans(can_ne, can_eq) : ValueSet::booleans(can_eq, can_ne);
    }
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
      ValueSet a = eval(ctx, e.args[0]);
      ValueSet b = eval(ctx, e.args[1]);
      if (a.empty() || b.empty()) return ValueSet::none();
      if (e.op == Op::Gt || e.op == Op::Ge) std::swap(a, b);
      const bool strict = e.op == Op::Lt || e.op == Op::Gt;
      // a < b (strict) or a <= b
      const bool can_true = strict ? a.lo < b.hi : a.lo <= b.hi;
      const bool can_false = strict ? a.hi >= b.lo : a.hi > b.lo;
      return ValueSet::booleans(can_false, can_true);
    }
    case Op::And:
    case Op::Or: {
      const bool is_and = e.op == Op::And;
      bool all_decided = true;
      for (const auto& arg : e.args) {
        const ValueSet v = eval(ctx, arg);
        if (v.empty()) return ValueSet::none();
        if (is_and && !v.contains(1)) return ValueSet::single(0);
        if (!is_and && !v.contains(0)) return ValueSet::single(1);
        if (v.contains(0) && v.contains(1)) all_decided = false;
      }
      if (all_decided) return ValueSet::single(is_and ? 1 : 0);
      return ValueSet::booleans(true, true);
    }
    case Op::Not: {
      const ValueSet v = eval(ctx, e.args[0]);
      return ValueSet::booleans(v.contains(1), v.contains(0));
    }
  }
  return ValueSet::none();
}

bool Engine::narrow(Ctx& ctx, const ConstraintExpr& e, const Allowed& allowed) const {
  switch (e.op) {
    case Op::Const: return allowed.contains(e.value);
    case Op::Var: {
      Domain& d = ctx.dom(e.var);
      if (d.retain_if([&](Value v) { return allowed.contains(v); })) ctx.touched(e.var);
      return !d.empty();
    }
    case Op::Elem: return narrow_elem(ctx, e, allowed);
    case Op::Abs: {
      if (allowed.negated) {
        std::vector<Value> banned;
        for (Value v : allowed.set.vals) {
          if (v >= 0) {
            banned.push_back(v);
            banned.push_back(-v);
          }
        }
        return narrow(ctx, e.args[0], Allowed::except(ValueSet::of(std::move(banned))));
      }
      if (allowed.set.empty()) return false;
      if (allowed.set.exact) {
        std::vector<Value> keep;
        for (Value v : allowed.set.vals) {
          if (v >= 0) {
            keep.push_back(v);
            keep.push_back(-v);
          }
        }
        return narrow(ctx, e.args[0], Allowed::in(ValueSet::of(std::move(keep))));
      }
      if (allowed.set.hi < 0) return false;
      return narrow(ctx, e.args[0], Allowed::in(ValueSet::interval(-allowed.set.hi, allowed.set.hi)));
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
      return narrow_arith(ctx, e, allowed);
    default: {
      const bool t = allowed.contains(1);
      const bool f = allowed.contains(0);
      if (t && f) return true;
      if (!t && !f) return false;
      return narrow_bool(ctx, e, t);
    }
  }
}

bool Engine::narrow_elem(Ctx& ctx, const ConstraintExpr& e, const Allowed& allowed) const {
  const int sslot = selector_slot(e.selector);
  Domain& sel = ctx.dom(sslot);
  if (sel.retain_if([&](Value i) {
        return any_allowed(ctx.dom(model_.elem_var(e.selector, e.field, i)), allowed);
      })) {
    ctx.touched(sslot);
  }
  if (sel.empty()) return false;
  if (sel.is_fixed()) {
    const model::VarId v = model_.elem_var(e.selector, e.field, sel.min());
    return narrow(ctx, ConstraintExpr::var_ref(v), allowed);
  }
  const std::size_t group = model_.selectors[static_cast<std::size_t>(e.selector)].group;
  const auto c = allowed.set.singleton();
  if (!allowed.negated && c && permutation_column_[group][e.field]) {
    // The value occurs in exactly one instance, which must be among the selectable ones.
    const auto& inst = model_.groups[group].vars;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (sel.contains(static_cast<Value>(i))) continue;
      const model::VarId v = inst[i][e.field];
      if (ctx.dom(v).remove(*c)) {
        ctx.touched(v);
        if (ctx.dom(v).empty()) return false;
      }
    }
  }
  return true;
}

bool Engine::narrow_arith(Ctx& ctx, const ConstraintExpr& e, const Allowed& allowed) const {
  const ValueSet a = eval(ctx, e.args[0]);
  const ValueSet b = eval(ctx, e.args[1]);
  if (a.empty() || b.empty()) return false;
  if (pairwise_ok(a, b)) {
    std::vector<Value> keep_a;
    std::vector<char> b_used(b.vals.size(), 0);
    for (Value x : a.vals) {
      bool supported = false;
      for (std::size_t j = 0; j < b.vals.size(); ++j) {
        if (allowed.contains(apply(e.op, x, b.vals[j]))) {
          supported = true;
          b_used[j] = 1;
        }
      }
      if (supported) keep_a.push_back(x);
    }
    std::vector<Value> keep_b;
    for (std::size_t j = 0; j < b.vals.size(); ++j) {
      if (b_used[j]) keep_b.push_back(b.vals[j]);
    }
    if (keep_a.empty()) return false;
    if (keep_a.size() < a.vals.size() &&
        !narrow(ctx, e.args[0], Allowed::in(ValueSet::of(std::move(keep_a))))) {
      return false;
    }
    if (keep_b.size() < b.vals.size() &&
        !narrow(ctx, e.args[1], Allowed::in(ValueSet::of(std::move(keep_b))))) {
      return false;
    }
    return true;
  }
  if (allowed.negated || e.op == Op::Mul) return true;
  const ValueSet& t = allowed.set;
  if (t.empty()) return false;
  const ValueSet target = ValueSet::interval(t.lo, t.hi);
  if (e.op == Op::Add) {
    // a in T - b, b in T - a
    if (!narrow(ctx, e.args[0], Allowed::in(arith(Op::Sub, target, b)))) return false;
    return narrow(ctx, e.args[1], Allowed::in(arith(Op::Sub, target, eval(ctx, e.args[0]))));
  }
  // a - b in T: a in T + b, b in a - T
  if (!narrow(ctx, e.args[0], Allowed::in(arith(Op::Add, target, b)))) return false;
  return narrow(ctx, e.args[1], Allowed::in(arith(Op::Sub, eval(ctx, e.args[0]), target)));
}

bool Engine::narrow_order(Ctx& ctx, const ConstraintExpr& a, const ConstraintExpr& b,
                          bool strict) const {
  const ValueSet bv = eval(ctx, b);
  if (bv.empty()) return false;
  const Value a_max = strict ? sat_sub(bv.hi, 1) : bv.hi;
  if (!narrow(ctx, a, Allowed::in(ValueSet::interval(kMin, a_max)))) return false;
  const ValueSet av = eval(ctx, a);
  if (av.empty()) return false;
  const Value b_min = strict ? sat_add(av.lo, 1) : av.lo;
  return narrow(ctx, b, Allowed::in(ValueSet::interval(b_min, kMax)));
}

bool Engine::narrow_bool(Ctx& ctx, const ConstraintExpr& e, bool truth) const {
  switch (e.op) {
    case Op::Eq:
    case Op::Ne: {
      const bool equal = (e.op == Op::Eq) == truth;
      const auto& x = e.args[0];
      const auto& y = e.args[1];
      if (equal) {
        if (!narrow(ctx, x, Allowed::in(eval(ctx, y)))) return false;
        return narrow(ctx, y, Allowed::in(eval(ctx, x)));
      }
      if (const auto c = eval(ctx, y).singleton()) {
        if (!narrow(ctx, x, Allowed::except(ValueSet::single(*c)))) return false;
      }
      if (const auto c = eval(ctx, x).singleton()) {
        return narrow(ctx, y, Allowed::except(ValueSet::single(*c)));
      }
      return true;
    }
    case Op::Lt: return truth ? narrow_order(ctx, e.args[0], e.args[1], true)
                              : narrow_order(ctx, e.args[1], e.args[0], false);
    case Op::Le: return truth ? narrow_order(ctx, e.args[0], e.args[1], false)
                              : narrow_order(ctx, e.args[1], e.args[0], true);
    case Op::Gt: return truth ? narrow_order(ctx, e.args[1], e.args[0], true)
                              : narrow_order(ctx, e.args[0], e.args[1], false);
    case Op::Ge: return truth ? narrow_order(ctx, e.args[1], e.args[0], false)
                              : narrow_order(ctx, e.args[0], e.args[1], true);
    case Op::And:
    case Op::Or: {
      // Conjunction forced true (or disjunction forced false) forces every child.
      const bool all_children = (e.op == Op::And) == truth;
      if (all_children) {
        for (const auto& arg : e.args) {
          if (!narrow_bool(ctx, arg, truth)) return false;
        }
        return true;
      }
      const ConstraintExpr* candidate = nullptr;
      int candidates = 0;
      for (const auto& arg : e.args) {
        const ValueSet v = eval(ctx, arg);
        if (!v.contains(truth ? 0 : 1)) {
          if (v.contains(truth ? 1 : 0)) return true;  // already satisfied
          continue;
        }
        if (v.contains(truth ? 1 : 0)) {
          ++candidates;
          candidate = &arg;
        }
      }
      if (candidates == 0) return false;
      if (candidates == 1) return narrow_bool(ctx, *candidate, truth);
      return true;
    }
    case Op::Not: return narrow_bool(ctx, e.args[0], !truth);
    default: return narrow(ctx, e, Allowed::in(ValueSet::single(truth ? 1 : 0)));
  }
}

bool Engine::revise_alldiff(Ctx& ctx, std::size_t group) const {
  const auto& vars = model_.alldiff_groups[group];
  const std::size_t n = vars.size();
  bool again = true;
  while (again) {
    again = false;
    for (model::VarId x : vars) {
      if (!ctx.dom(x).is_fixed()) continue;
      const Value v = ctx.dom(x).min();
      for (model::VarId y : vars) {
        if (y == x || !ctx.dom(y).remove(v)) continue;
        ctx.touched(y);
        if (ctx.dom(y).empty()) return false;
        if (ctx.dom(y).is_fixed()) again = true;
      }
    }
    std::map<Value, std::pair<int, model::VarId>> support;  // value -> (count, last var)
    for (model::VarId x : vars) {
      ctx.dom(x).for_each([&](Value v) {
        auto& s = support[v];
        ++s.first;
        s.second = x;
      });
    }
    if (support.size() < n) return false;
    if (support.size() == n) {
      for (const auto& [v, s] : support) {
        if (s.first == 1 && !ctx.dom(s.second).is_fixed()) {
          ctx.dom(s.second).assign(v);
          ctx.touched(s.second);
          again = true;
        }
      }
      if (again) continue;
    }
    if (support.size() > kHallCap) continue;
    std::vector<Value> u;
    for (const auto& kv : support) u.push_back(kv.first);
    for (std::size_t a = 0; a < u.size(); ++a) {
      for (std::size_t b = a; b < u.size(); ++b) {
        const std::size_t width = b - a + 1;
        std::size_t inside = 0;
        for (model::VarId x : vars) {
          if (ctx.dom(x).min() >= u[a] && ctx.dom(x).max() <= u[b]) ++inside;
        }
        if (inside > width) return false;
        if (inside < width || inside == n) continue;
        for (model::VarId x : vars) {
          Domain& d = ctx.dom(x);
          if (d.min() >= u[a] && d.max() <= u[b]) continue;
          bool changed = false;
          for (std::size_t k = a; k <= b; ++k) changed = d.remove(u[k]) || changed;
          if (changed) {
            ctx.touched(x);
            if (d.empty()) return false;
            again = true;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace logic_forge::solver
