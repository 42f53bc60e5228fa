#include "logic_forge/agent/pipeline.hpp"

#include <stdexcept>

#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/frontend/parser.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/lower.hpp"

namespace logic_forge::agent {

std::string_view to_string(PipelineStatus status) {
  switch (status) {
    case PipelineStatus::Solved: return "Solved";
    case PipelineStatus::FailedSyntax: return "FailedSyntax";
    case PipelineStatus::FailedSemantic: return "FailedSemantic";
    case PipelineStatus::FailedUnsat: return "FailedUnsat";
    case PipelineStatus::FailedBudget: return "FailedBudget";
    case PipelineStatus::FailedAmbiguous: return "FailedAmbiguous";
    case PipelineStatus::FailedFormalizer: return "FailedFormalizer";
    case PipelineStatus::FailedFormat: return "FailedFormat";
  }
  return "?";
}

nlohmann::ordered_json PipelineResult::to_json() const {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(status));
  j["attempts"] = attempts;
  j["solution"] = output ? *output : nlohmann::ordered_json(nullptr);
  j["source"] = source;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : log) {
    entries.push_back(nlohmann::ordered_json{{"attempt", e.attempt}, {"stage", e.stage}, {"error", e.error}});
  }
  j["log"] = std::move(entries);
  return j;
}

frontend::SourceText merge_sources(const frontend::SourceText& data_structure,
                                   const frontend::SourceText& constraints, int attempt) {
  std::string text = data_structure.text;
  if (!text.empty() && text.back() != '\n') text += '\n';
  text += '\n';
  text += constraints.text;
  return frontend::SourceText{std::move(text), "formalizer attempt #" + std::to_string(attempt)};
}

namespace {

struct AttemptFailure {
  PipelineStatus status;
  std::string stage;
  std::string error;
};

}  // namespace

PipelineResult run_pipeline(const std::string& puzzle_text, const OutputFormat& expected_format,
                            Formalizer& formalizer, const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  PipelineResult result;
  const int max_attempts = std::max(1, config.max_attempts);
  solver::SolveOptions options;
  options.budget = config.budget;

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    result.attempts = attempt;
    auto fail = [&](PipelineStatus status, std::string stage, std::string error) {
      result.status = status;
      result.log.push_back({attempt, std::move(stage), std::move(error)});
    };

    frontend::SourceText source;
    try {
      const auto ds = formalizer.gen_data_structure(puzzle_text, expected_format);
      const auto constraints = formalizer.gen_constraints(ds, puzzle_text);
      source = merge_sources(ds, constraints, attempt);
    } catch (const FormalizerError& e) {
      fail(PipelineStatus::FailedFormalizer, "formalize", e.what());
      continue;
    }
    result.source = source.text;

    frontend::DslProgram parsed;
    try {
      parsed = frontend::parse(source);
    } catch (const frontend::SyntaxError& e) {
      fail(PipelineStatus::FailedSyntax, "parse", e.diagnostic().str());
      continue;
    }
    std::optional<frontend::CheckedProgram> checked;
    try {
      checked = frontend::check(parsed);
    } catch (const frontend::SemanticError& e) {
      fail(PipelineStatus::FailedSemantic, "check", e.diagnostic().str());
      continue;
    }
    std::optional<model::ConstraintModel> m;
    try {
      m = model::lower(*checked);
    } catch (const model::InternalError& e) {
      fail(PipelineStatus::FailedSemantic, "lower", e.what());
      continue;
    }

    solver::SolveOutcome outcome;
    try {
      outcome = solver::solve(*m, options);
    } catch (const solver::BudgetExceeded& e) {
      fail(PipelineStatus::FailedBudget, "solve", e.what());
      continue;
    }
    if (outcome.status == solver::Status::Unsat) {
      fail(PipelineStatus::FailedUnsat, "solve", "constraints are unsatisfiable");
      continue;
    }
    if (config.ambiguity_check) {
      try {
        const auto report = solver::find_second(*m, *outcome.assignment, options);
        if (report.second) {
          fail(PipelineStatus::FailedAmbiguous, "ambiguity", "a second distinct solution exists");
          continue;
        }
      } catch (const solver::BudgetExceeded& e) {
        fail(PipelineStatus::FailedBudget, "ambiguity", e.what());
        continue;
      }
    }

    SolutionTable table = model::decode(*m, *outcome.assignment);
    try {
      result.output = format_output(table, expected_format);
    } catch (const FormatError& e) {
      fail(PipelineStatus::FailedFormat, "format", e.what());
      continue;
    }
    result.solution = std::move(table);
    result.status = PipelineStatus::Solved;
    result.log.push_back({attempt, "solved", ""});
    break;
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace logic_forge::agent
