#include "logic_forge/solver/solver.hpp"

#include <ostream>

#include "engine.hpp"
#include "logic_forge/solver/evaluator.hpp"

namespace logic_forge::solver {

using model::Assignment;
using model::ConstraintExpr;
using model::ConstraintModel;
using model::Op;
using Clock = std::chrono::steady_clock;

namespace {

class Search {
 public:
  Search(const Engine& engine, const SolveOptions& options)
      : engine_(engine), options_(options), start_(Clock::now()) {}

  SolveOutcome run() {
    SolveOutcome out;
    State root = engine_.initial_state();
    if (engine_.propagate_all(root, stats_) && dfs(root, 0)) {
      out.status = Status::Sat;
      out.assignment = std::move(found_);
    }
    stats_.elapsed = Clock::now() - start_;
    out.stats = stats_;
    return out;
  }

 private:
  /// Next slot to branch on: smallest unfixed var domain, then selectors.
  int choose(const State& s) const {
    int best = -1;
    std::size_t best_size = 0;
    const int nv = engine_.num_vars();
    for (int pass = 0; pass < 2 && best < 0; ++pass) {
      const int lo = pass == 0 ? 0 : nv;
      const int hi = pass == 0 ? nv : static_cast<int>(s.doms.size());
      for (int i = lo; i < hi; ++i) {
        const std::size_t size = s.doms[static_cast<std::size_t>(i)].size();
        if (size > 1 && (best < 0 || size < best_size)) {
          best = i;
          best_size = size;
        }
      }
    }
    return best;
  }

  std::string slot_name(int slot) const {
    const auto& m = engine_.model();
    if (slot < engine_.num_vars()) return m.vars[static_cast<std::size_t>(slot)].name;
    return m.selectors[static_cast<std::size_t>(slot - engine_.num_vars())].name;
  }

  void charge_decision() {
    ++stats_.decisions;
    if (stats_.decisions > options_.budget.max_decisions) {
      stats_.elapsed = Clock::now() - start_;
      throw BudgetExceeded("decision budget exhausted", stats_);
    }
    if ((stats_.decisions & 1023U) == 0 && Clock::now() - start_ > options_.budget.max_time) {
      stats_.elapsed = Clock::now() - start_;
      throw BudgetExceeded("time budget exhausted", stats_);
    }
  }

  bool leaf(const State& s) {
    const auto& m = engine_.model();
    Assignment a;
    for (std::size_t i = 0; i < m.vars.size(); ++i) a.vars.push_back(s.doms[i].min());
    for (std::size_t i = m.vars.size(); i < s.doms.size(); ++i) a.selectors.push_back(s.doms[i].min());
    if (first_violation(m, a, engine_.constraints())) return false;
    found_ = std::move(a);
    return true;
  }

  bool dfs(const State& s, int depth) {
    const int slot = choose(s);
    if (slot < 0) return leaf(s);
    for (model::Value v : s.doms[static_cast<std::size_t>(slot)].values()) {
      charge_decision();
      if (options_.trace != nullptr) {
        *options_.trace << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "decide "
                        << slot_name(slot) << " = " << v << '\n';
      }
      State child = s;
      child.doms[static_cast<std::size_t>(slot)].assign(v);
      if (engine_.propagate(child, {slot}, stats_) && dfs(child, depth + 1)) return true;
      if (options_.trace != nullptr) {
        *options_.trace << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "backtrack "
                        << slot_name(slot) << " = " << v << '\n';
      }
    }
    return false;
  }

  const Engine& engine_;
  const SolveOptions& options_;
  Clock::time_point start_;
  Stats stats_;
  Assignment found_;
};

SolveOutcome solve_with(const ConstraintModel& model, std::vector<ConstraintExpr> extra,
                        const SolveOptions& options) {
  std::vector<ConstraintExpr> all = model.constraints;
  for (auto& c : symmetry_breaking(model)) all.push_back(std::move(c));
  for (auto& c : extra) all.push_back(std::move(c));
  const Engine engine(model, std::move(all));
  SolveOutcome out = Search(engine, options).run();
  if (out.assignment) {
    if (const auto why = first_violation(model, *out.assignment, engine.constraints())) {
      throw model::InternalError("solver returned an invalid assignment: " + *why);
    }
  }
  return out;
}

}  // namespace

std::vector<ConstraintExpr> symmetry_breaking(const ConstraintModel& model) {
  std::vector<ConstraintExpr> out;
  for (const auto& g : model.groups) {
    if (!g.position_field) continue;
    for (std::size_t i = 1; i < g.vars.size(); ++i) {
      out.push_back(ConstraintExpr::binary(Op::Lt,
                                           ConstraintExpr::var_ref(g.vars[i - 1][*g.position_field]),
                                           ConstraintExpr::var_ref(g.vars[i][*g.position_field])));
    }
  }
  return out;
}

ConstraintExpr blocking_constraint(const ConstraintModel& model, const Assignment& first) {
  std::vector<ConstraintExpr> per_group;
  auto differs = [&](model::VarId v, model::VarId from) {
    return ConstraintExpr::binary(Op::Ne, ConstraintExpr::var_ref(v),
                                  ConstraintExpr::constant(first.vars[static_cast<std::size_t>(from)]));
  };
  for (const auto& g : model.groups) {
    if (g.vars.empty() || g.fields.empty()) continue;
    if (g.position_field) {
      // Some new row matches no old row.
      std::vector<ConstraintExpr> some_new_row;
      for (const auto& inst : g.vars) {
        std::vector<ConstraintExpr> unlike_every_old;
        for (const auto& old : g.vars) {
          std::vector<ConstraintExpr> cell_differs;
          for (std::size_t f = 0; f < g.fields.size(); ++f) cell_differs.push_back(differs(inst[f], old[f]));
          unlike_every_old.push_back(ConstraintExpr::nary(Op::Or, std::move(cell_differs)));
        }
        some_new_row.push_back(ConstraintExpr::nary(Op::And, std::move(unlike_every_old)));
      }
      per_group.push_back(ConstraintExpr::nary(Op::Or, std::move(some_new_row)));
      continue;
    }
    std::vector<ConstraintExpr> any_var;
    for (const auto& inst : g.vars) {
      for (model::VarId v : inst) any_var.push_back(differs(v, v));
    }
    per_group.push_back(ConstraintExpr::nary(Op::Or, std::move(any_var)));
  }
  std::vector<bool> grouped(model.vars.size(), false);
  for (const auto& g : model.groups) {
    for (const auto& inst : g.vars) {
      for (model::VarId v : inst) grouped[static_cast<std::size_t>(v)] = true;
    }
  }
  for (const auto& v : model.vars) {
    if (!grouped[static_cast<std::size_t>(v.id)]) per_group.push_back(differs(v.id, v.id));
  }
  if (per_group.empty()) return ConstraintExpr::constant(0);
  return ConstraintExpr::nary(Op::Or, std::move(per_group));
}

SolveOutcome solve(const ConstraintModel& model, const SolveOptions& options) {
  return solve_with(model, {}, options);
}

AmbiguityReport find_second(const ConstraintModel& model, const Assignment& first,
                            const SolveOptions& options) {
  AmbiguityReport report;
  report.first = first;
  SolveOutcome out = solve_with(model, {blocking_constraint(model, first)}, options);
  report.second = std::move(out.assignment);
  report.stats = out.stats;
  return report;
}

std::optional<std::vector<std::vector<model::Value>>> propagate_root(const ConstraintModel& model) {
  std::vector<ConstraintExpr> all = model.constraints;
  for (auto& c : symmetry_breaking(model)) all.push_back(std::move(c));
  const Engine engine(model, std::move(all));
  State s = engine.initial_state();
  Stats stats;
  if (!engine.propagate_all(s, stats)) return std::nullopt;
  std::vector<std::vector<model::Value>> out;
  for (const Domain& d : s.doms) out.push_back(d.values());
  return out;
}

}  // namespace logic_forge::solver
