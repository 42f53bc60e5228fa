#pragma once

#include <stdexcept>
#include <string>

#include "logic_forge/agent/output_format.hpp"
#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::agent {

/// Failure to obtain source text from a formalizer; the pipeline counts it as
/// a failed attempt.
class FormalizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network or HTTP failure while talking to a model endpoint.
class TransportError : public FormalizerError {
 public:
  using FormalizerError::FormalizerError;
};

/// A reply without a usable code block.
class ExtractionError : public FormalizerError {
 public:
  using FormalizerError::FormalizerError;
};

/// Turns puzzle text into Logic.py in two steps: the data structure that can
/// hold a solution, then a validator over it.
class Formalizer {
 public:
  virtual ~Formalizer() = default;

  virtual frontend::SourceText gen_data_structure(const std::string& puzzle_text,
                                                  const OutputFormat& expected_format) = 0;
  virtual frontend::SourceText gen_constraints(const frontend::SourceText& data_structure,
                                               const std::string& puzzle_text) = 0;
};

}  // namespace logic_forge::agent
