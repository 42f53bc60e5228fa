#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "logic_forge/agent/formalizer.hpp"
#include "logic_forge/agent/output_format.hpp"
#include "logic_forge/solver/solver.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::agent {

struct PipelineConfig {
  int max_attempts = 5;
  solver::Budget budget;
  /// Restart when a second distinct solution exists.
  bool ambiguity_check = false;
};

enum class PipelineStatus {
  Solved,
  FailedSyntax,
  FailedSemantic,
  FailedUnsat,
  FailedBudget,
  FailedAmbiguous,
  FailedFormalizer,  // transport or extraction failure
  FailedFormat,      // the solved table lacks a requested column
};

std::string_view to_string(PipelineStatus status);

/// Outcome of one attempt: the stage that ended it and a one-line summary.
struct AttemptLog {
  int attempt = 0;
  std::string stage;  // formalize, parse, check, lower, solve, ambiguity, format, solved
  std::string error;
};

struct PipelineResult {
  PipelineStatus status = PipelineStatus::FailedSyntax;
  int attempts = 0;
  std::optional<SolutionTable> solution;
  /// Formatted answer, present with `solution`.
  std::optional<nlohmann::ordered_json> output;
  /// Merged Logic.py source of the last attempt that got that far.
  std::string source;
  std::vector<AttemptLog> log;
  std::chrono::nanoseconds elapsed{0};

  /// Stable serialisation; timing is left out so replays compare equal.
  nlohmann::ordered_json to_json() const;
};

/// Concatenates the data structure and the validator, classes first.
frontend::SourceText merge_sources(const frontend::SourceText& data_structure,
                                   const frontend::SourceText& constraints, int attempt);

/// Formalize, check, lower, solve and format, restarting from the data
/// structure step on any failure until `max_attempts` attempts are used.
/// Never throws for pipeline failures; they are encoded in the status.
PipelineResult run_pipeline(const std::string& puzzle_text, const OutputFormat& expected_format,
                            Formalizer& formalizer, const PipelineConfig& config = {});

}  // namespace logic_forge::agent
