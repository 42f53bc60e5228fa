#include "logic_forge/solver/brute_force.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "logic_forge/solver/evaluator.hpp"

namespace logic_forge::solver {

using model::Assignment;
using model::ConstraintExpr;
using model::ConstraintModel;
using model::Op;
using model::Value;
using model::VarId;

namespace {

struct Unit {
  std::vector<VarId> vars;
  bool injective = false;
};

/// Constraints linked through shared selectors; checked together once every
/// var they mention is enumerated.
struct Component {
  std::vector<std::size_t> constraints;
  std::vector<model::SelectorId> selectors;
  int ready = -1;
};

void mentioned(const ConstraintModel& m, const ConstraintExpr& e, std::set<VarId>& vars,
               std::set<model::SelectorId>& sels) {
  if (e.op == Op::Var) vars.insert(e.var);
  if (e.op == Op::Elem) {
    sels.insert(e.selector);
    for (const auto& inst : m.group_of(e.selector).vars) vars.insert(inst[e.field]);
  }
  for (const auto& a : e.args) mentioned(m, a, vars, sels);
}

class Enumerator {
 public:
  Enumerator(const ConstraintModel& m, const BruteForceOptions& options)
      : m_(m), options_(options) {
    build_units();
    build_chains();
    check_cap();
    build_components();
  }

  BruteForceResult run() {
    current_.vars.assign(m_.vars.size(), 0);
    current_.selectors.assign(m_.selectors.size(), 0);
    assigned_.assign(m_.vars.size(), false);
    if (components_ready(-1)) enumerate_unit(0);
    return std::move(result_);
  }

 private:
  void build_units() {
    std::vector<bool> covered(m_.vars.size(), false);
    for (const auto& g : m_.alldiff_groups) {
      Unit u;
      u.vars = g;
      std::sort(u.vars.begin(), u.vars.end());
      u.injective = true;
      for (VarId v : g) covered[static_cast<std::size_t>(v)] = true;
      units_.push_back(std::move(u));
    }
    for (const auto& v : m_.vars) {
      if (!covered[static_cast<std::size_t>(v.id)]) units_.push_back(Unit{{v.id}, false});
    }
    std::sort(units_.begin(), units_.end(),
              [](const Unit& a, const Unit& b) { return a.vars.front() < b.vars.front(); });
    unit_of_.assign(m_.vars.size(), 0);
    for (std::size_t u = 0; u < units_.size(); ++u) {
      for (VarId v : units_[u].vars) unit_of_[static_cast<std::size_t>(v)] = static_cast<int>(u);
    }
  }

  void build_chains() {
    prev_.assign(m_.vars.size(), -1);
    next_.assign(m_.vars.size(), -1);
    for (const auto& g : m_.groups) {
      if (!g.position_field) continue;
      for (std::size_t i = 1; i < g.vars.size(); ++i) {
        const VarId a = g.vars[i - 1][*g.position_field];
        const VarId b = g.vars[i][*g.position_field];
        prev_[static_cast<std::size_t>(b)] = a;
        next_[static_cast<std::size_t>(a)] = b;
      }
    }
  }

  void check_cap() {
    long double total = 1;
    for (const Unit& u : units_) {
      const auto d = static_cast<long double>(m_.vars[static_cast<std::size_t>(u.vars.front())].domain.size());
      long double count = 1;
      if (!u.injective) {
        count = d;
      } else {
        for (std::size_t k = 0; k < u.vars.size(); ++k) count *= std::max<long double>(0, d - static_cast<long double>(k));
        // Each increasing chain of length L keeps one of its L! orders.
        std::size_t run = 0;
        for (VarId v : u.vars) {
          if (prev_[static_cast<std::size_t>(v)] < 0) {
            run = 1;
          } else {
            ++run;
            count /= static_cast<long double>(run);
          }
        }
      }
      total *= count;
    }
    if (total > static_cast<long double>(options_.max_tables)) {
      throw CapExceeded("brute force would enumerate about " + std::to_string(static_cast<double>(total)) +
                        " tables");
    }
  }

  void build_components() {
    const std::size_t n = m_.constraints.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::set<VarId>> vars(n);
    std::vector<std::set<model::SelectorId>> sels(n);
    std::vector<std::size_t> owner(m_.selectors.size(), n);
    for (std::size_t c = 0; c < n; ++c) {
      mentioned(m_, m_.constraints[c], vars[c], sels[c]);
      for (auto s : sels[c]) {
        auto& o = owner[static_cast<std::size_t>(s)];
        if (o == n) o = c; else parent[find(c)] = find(o);
      }
    }
    std::vector<int> index(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t root = find(c);
      if (index[root] < 0) {
        index[root] = static_cast<int>(components_.size());
        components_.emplace_back();
      }
      Component& comp = components_[static_cast<std::size_t>(index[root])];
      comp.constraints.push_back(c);
      for (VarId v : vars[c]) comp.ready = std::max(comp.ready, unit_of_[static_cast<std::size_t>(v)]);
      for (auto s : sels[c]) comp.selectors.push_back(s);
    }
    for (Component& comp : components_) {
      std::sort(comp.selectors.begin(), comp.selectors.end());
      comp.selectors.erase(std::unique(comp.selectors.begin(), comp.selectors.end()), comp.selectors.end());
      std::uint64_t tuples = 1;
      for (auto s : comp.selectors) {
        tuples *= static_cast<std::uint64_t>(m_.selectors[static_cast<std::size_t>(s)].list_len);
        if (tuples > options_.max_selector_tuples) {
          throw CapExceeded("too many selector combinations in one constraint group");
        }
      }
    }
  }

  bool component_holds(const Component& comp) {
    for (auto s : comp.selectors) current_.selectors[static_cast<std::size_t>(s)] = 0;
    while (true) {
      const bool ok = std::all_of(comp.constraints.begin(), comp.constraints.end(), [&](std::size_t c) {
        return evaluate(m_, m_.constraints[c], current_) != 0;
      });
      if (ok) return true;
      std::size_t k = 0;
      for (; k < comp.selectors.size(); ++k) {
        auto& v = current_.selectors[static_cast<std::size_t>(comp.selectors[k])];
        if (++v < m_.selectors[static_cast<std::size_t>(comp.selectors[k])].list_len) break;
        v = 0;
      }
      if (k == comp.selectors.size()) return false;
    }
  }

  bool components_ready(int unit) {
    for (const Component& comp : components_) {
      if (comp.ready == unit && !component_holds(comp)) return false;
    }
    return true;
  }

  bool chain_ok(VarId v) const {
    const Value x = current_.vars[static_cast<std::size_t>(v)];
    const VarId p = prev_[static_cast<std::size_t>(v)];
    const VarId n = next_[static_cast<std::size_t>(v)];
    if (p >= 0 && assigned_[static_cast<std::size_t>(p)] && current_.vars[static_cast<std::size_t>(p)] >= x) return false;
    if (n >= 0 && assigned_[static_cast<std::size_t>(n)] && current_.vars[static_cast<std::size_t>(n)] <= x) return false;
    return true;
  }

  void enumerate_unit(std::size_t u) {
    if (stopped()) return;
    if (u == units_.size()) {
      if (result_.solutions.size() == options_.max_solutions) {
        result_.truncated = true;
        return;
      }
      result_.solutions.push_back(current_);
      return;
    }
    std::set<Value> used;
    fill(u, 0, used);
  }

  void fill(std::size_t u, std::size_t k, std::set<Value>& used) {
    if (stopped()) return;
    const Unit& unit = units_[u];
    if (k == unit.vars.size()) {
      if (components_ready(static_cast<int>(u))) enumerate_unit(u + 1);
      return;
    }
    const VarId v = unit.vars[k];
    const auto& dom = m_.vars[static_cast<std::size_t>(v)].domain;
    for (Value x = dom.min(); x <= dom.max(); ++x) {
      if (unit.injective && used.count(x) != 0) continue;
      current_.vars[static_cast<std::size_t>(v)] = x;
      assigned_[static_cast<std::size_t>(v)] = true;
      if (chain_ok(v)) {
        used.insert(x);
        fill(u, k + 1, used);
        used.erase(x);
      }
      assigned_[static_cast<std::size_t>(v)] = false;
      if (stopped()) return;
    }
  }

  bool stopped() const { return result_.truncated; }

  const ConstraintModel& m_;
  const BruteForceOptions& options_;
  std::vector<Unit> units_;
  std::vector<int> unit_of_;
  std::vector<VarId> prev_, next_;
  std::vector<Component> components_;
  Assignment current_;
  std::vector<bool> assigned_;
  BruteForceResult result_;
};

}  // namespace

BruteForceResult brute_force(const ConstraintModel& model, const BruteForceOptions& options) {
  return Enumerator(model, options).run();
}

}  // namespace logic_forge::solver
