#pragma once

#include <string>

#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/model/lower.hpp"

namespace test_support {

inline logic_forge::model::ConstraintModel lower_source(const std::string& text) {
  return logic_forge::model::lower(
      logic_forge::frontend::parse_and_check(logic_forge::frontend::SourceText{text, "<test>"}));
}

}  // namespace test_support
