#pragma once

#include "logic_forge/agent/formalizer.hpp"
#include "logic_forge/bench/puzzle.hpp"
#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::bench {

/// `House` and `PuzzleSolution` classes for the instance.
frontend::SourceText render_dsl_classes(const PuzzleInstance& instance);
/// The validator, one block per clue; `pass` when there are no clues.
frontend::SourceText render_dsl_validator(const PuzzleInstance& instance);
/// Classes, a blank line, then the validator.
frontend::SourceText render_dsl(const PuzzleInstance& instance);

/// Deterministic formalizer for puzzles written by render_text(): parses the
/// text back and renders Logic.py without any model.
class OracleFormalizer : public agent::Formalizer {
 public:
  frontend::SourceText gen_data_structure(const std::string& puzzle_text,
                                          const agent::OutputFormat& expected_format) override;
  frontend::SourceText gen_constraints(const frontend::SourceText& data_structure,
                                       const std::string& puzzle_text) override;
};

}  // namespace logic_forge::bench
