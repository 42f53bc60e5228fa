#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logic_forge/model/model.hpp"

namespace logic_forge::solver {

/// Concrete value of `expr` under a total assignment (booleans are 0/1).
model::Value evaluate(const model::ConstraintModel& model, const model::ConstraintExpr& expr,
                      const model::Assignment& assignment);

/// Describes the first violated requirement (size, domain, all-different, or
/// constraint), or nullopt when the assignment satisfies the model.
std::optional<std::string> first_violation(const model::ConstraintModel& model,
                                           const model::Assignment& assignment,
                                           const std::vector<model::ConstraintExpr>& extra = {});

inline bool satisfies(const model::ConstraintModel& model, const model::Assignment& assignment) {
  return !first_violation(model, assignment).has_value();
}

}  // namespace logic_forge::solver
