#include "logic_forge/agent/output_format.hpp"

#include <cctype>

namespace logic_forge::agent {

nlohmann::ordered_json OutputFormat::to_json() const {
  return nlohmann::ordered_json{{"columns", columns}};
}

OutputFormat OutputFormat::from_json(const nlohmann::json& j) {
  OutputFormat f;
  if (j.contains("columns")) f.columns = j.at("columns").get<std::vector<std::string>>();
  return f;
}

std::string normalise_column(const std::string& name) {
  std::string out;
  for (unsigned char c : name) {
    if (c == '_' || c == ' ' || c == '-') continue;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

nlohmann::ordered_json format_output(const SolutionTable& table, const OutputFormat& format) {
  std::vector<std::string> names = format.columns.empty() ? table.columns : format.columns;
  std::vector<std::size_t> source;
  for (const std::string& want : names) {
    std::optional<std::size_t> found;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (normalise_column(table.columns[c]) == normalise_column(want)) {
        found = c;
        break;
      }
    }
    if (!found) throw FormatError("solution has no column matching '" + want + "'");
    source.push_back(*found);
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < names.size(); ++k) {
      const Cell& cell = row.at(source[k]);
      if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        obj[names[k]] = *i;
      } else {
        obj[names[k]] = std::get<std::string>(cell);
      }
    }
    rows.push_back(std::move(obj));
  }
  return nlohmann::ordered_json{{"rows", std::move(rows)}};
}

SolutionTable table_from_output(const nlohmann::json& doc, const std::vector<std::string>& columns) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.at("rows").is_array()) {
    throw FormatError("output document has no rows array");
  }
  SolutionTable t;
  t.columns = columns;
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& c : columns) {
      if (!row.is_object() || !row.contains(c)) throw FormatError("row is missing column '" + c + "'");
      const auto& v = row.at(c);
      if (v.is_number_integer()) {
        cells.emplace_back(v.get<std::int64_t>());
      } else if (v.is_string()) {
        cells.emplace_back(v.get<std::string>());
      } else {
        throw FormatError("column '" + c + "' holds neither a string nor an integer");
      }
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace logic_forge::agent
