#pragma once

#include <string>

#include "logic_forge/model/model.hpp"

namespace logic_forge::model {

/// Stable text dump: one line per var (`name : domain`), per selector, per
/// all-different group, and per constraint in prefix notation.
std::string dump(const ConstraintModel& model);

std::string to_prefix(const ConstraintModel& model, const ConstraintExpr& expr);

}  // namespace logic_forge::model
