#include "logic_forge/frontend/diagnostics.hpp"

namespace logic_forge::frontend {

std::string Diagnostic::str() const {
  return origin + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
         category + ": " + message;
}

DslError::DslError(Diagnostic diag) : std::runtime_error(diag.str()), diag_(std::move(diag)) {}

SyntaxError::SyntaxError(std::string origin, SourcePos pos, std::string message)
    : DslError(Diagnostic{std::move(origin), pos, "SyntaxError", std::move(message)}) {}

std::string_view to_string(SemanticCategory category) {
  switch (category) {
    case SemanticCategory::NoEntryFunction: return "NoEntryFunction";
    case SemanticCategory::MultipleEntryFunctions: return "MultipleEntryFunctions";
    case SemanticCategory::UnknownName: return "UnknownName";
    case SemanticCategory::TypeMismatch: return "TypeMismatch";
    case SemanticCategory::ValueOutsideDomain: return "ValueOutsideDomain";
    case SemanticCategory::BadNondetTarget: return "BadNondetTarget";
    case SemanticCategory::UniqueWithoutDomain: return "UniqueWithoutDomain";
    case SemanticCategory::UnboundedField: return "UnboundedField";
    case SemanticCategory::DuplicateName: return "DuplicateName";
  }
  return "Unknown";
}

SemanticError::SemanticError(SemanticCategory category, std::string origin, SourcePos pos,
                             std::string message)
    : DslError(Diagnostic{std::move(origin), pos, std::string(to_string(category)),
                          std::move(message)}),
      category_(category) {}

}  // namespace logic_forge::frontend
