#pragma once

#include <vector>

#include "logic_forge/model/model.hpp"
#include "logic_forge/solver/domain.hpp"
#include "logic_forge/solver/solver.hpp"
#include "value_set.hpp"

namespace logic_forge::solver {

/// Current domains: model vars first, then selectors.
struct State {
  std::vector<Domain> doms;
};

/// Propagation over a fixed constraint set. Stateless apart from its
/// precomputed watch lists, so one engine serves a whole search.
class Engine {
 public:
  Engine(const model::ConstraintModel& model, std::vector<model::ConstraintExpr> constraints);

  State initial_state() const;
  /// Runs every propagator to a fixpoint; false on contradiction.
  bool propagate_all(State& state, Stats& stats) const;
  /// Runs the propagators watching `changed` to a fixpoint.
  bool propagate(State& state, const std::vector<int>& changed, Stats& stats) const;

  int selector_slot(model::SelectorId s) const { return num_vars_ + s; }
  int num_vars() const { return num_vars_; }
  const model::ConstraintModel& model() const { return model_; }
  const std::vector<model::ConstraintExpr>& constraints() const { return constraints_; }

 private:
  struct Ctx;

  bool run(State& state, std::vector<int> queue, Stats& stats) const;
  bool revise_constraint(Ctx& ctx, const model::ConstraintExpr& root) const;
  bool revise_alldiff(Ctx& ctx, std::size_t group) const;

  ValueSet eval(const Ctx& ctx, const model::ConstraintExpr& e) const;
  bool narrow(Ctx& ctx, const model::ConstraintExpr& e, const Allowed& allowed) const;
  bool narrow_bool(Ctx& ctx, const model::ConstraintExpr& e, bool truth) const;
  bool narrow_elem(Ctx& ctx, const model::ConstraintExpr& e, const Allowed& allowed) const;
  bool narrow_arith(Ctx& ctx, const model::ConstraintExpr& e, const Allowed& allowed) const;
  bool narrow_order(Ctx& ctx, const model::ConstraintExpr& a, const model::ConstraintExpr& b,
                    bool strict) const;

  void collect_slots(const model::ConstraintExpr& e, std::vector<int>& out) const;

  const model::ConstraintModel& model_;
  std::vector<model::ConstraintExpr> constraints_;
  int num_vars_ = 0;
  std::vector<std::vector<int>> watchers_;  // slot -> propagator ids
  /// [group][field]: column is one whole all-different group whose domain
  /// size equals the instance count, so every value occurs exactly once.
  std::vector<std::vector<bool>> permutation_column_;
};

}  // namespace logic_forge::solver
