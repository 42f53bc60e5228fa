#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logic_forge::frontend {

struct SourcePos {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// One diagnostic rendered as `origin:line:col: category: message`.
struct Diagnostic {
  std::string origin;
  SourcePos pos;
  std::string category;
  std::string message;

  std::string str() const;
};

class DslError : public std::runtime_error {
 public:
  explicit DslError(Diagnostic diag);

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

class SyntaxError : public DslError {
 public:
  SyntaxError(std::string origin, SourcePos pos, std::string message);
};

enum class SemanticCategory {
  NoEntryFunction,
  MultipleEntryFunctions,
  UnknownName,
  TypeMismatch,
  ValueOutsideDomain,
  BadNondetTarget,
  UniqueWithoutDomain,
  UnboundedField,
  DuplicateName,
};

std::string_view to_string(SemanticCategory category);

class SemanticError : public DslError {
 public:
  SemanticError(SemanticCategory category, std::string origin, SourcePos pos,
                std::string message);

  SemanticCategory category() const { return category_; }

 private:
  SemanticCategory category_;
};

}  // namespace logic_forge::frontend
