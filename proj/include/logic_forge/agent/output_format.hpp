#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::agent {

/// Columns the caller expects in the answer, in output order. Empty means
/// every table column in table order.
struct OutputFormat {
  std::vector<std::string> columns;

  nlohmann::ordered_json to_json() const;
  static OutputFormat from_json(const nlohmann::json& j);
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowercased name with underscores and spaces removed; descriptor columns
/// match table columns under this normalisation.
std::string normalise_column(const std::string& name);

/// `{"rows": [{column: value, ...}, ...]}` with rows in table order.
nlohmann::ordered_json format_output(const SolutionTable& table, const OutputFormat& format);

/// Inverse of format_output for the given columns. Throws FormatError on a
/// malformed document.
SolutionTable table_from_output(const nlohmann::json& doc, const std::vector<std::string>& columns);

}  // namespace logic_forge::agent
