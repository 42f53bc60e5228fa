#include "logic_forge/bench/dataset.hpp"

#include <fstream>

namespace logic_forge::bench {

using nlohmann::json;
using nlohmann::ordered_json;

PuzzleTask task_from_instance(const PuzzleInstance& p) {
  PuzzleTask t;
  t.id = p.id;
  t.size = size_label(p.n_entities, p.n_features);
  t.puzzle = p.text;
  t.format.columns = p.truth.columns;
  t.truth = p.truth;
  return t;
}

ordered_json table_to_json(const SolutionTable& table) {
  ordered_json j;
  j["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const Cell& c : row) {
      if (const auto* i = std::get_if<std::int64_t>(&c)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["key"] = table.key_column ? ordered_json(table.columns[*table.key_column]) : ordered_json(nullptr);
  return j;
}

namespace {

const json& member(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(where + ": missing '" + name + "'");
  return j.at(name);
}

std::string string_member(const json& j, const char* name, const std::string& where) {
  const json& v = member(j, name, where);
  if (!v.is_string()) throw SchemaError(where + ": '" + name + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& s : v) {
    if (!s.is_string()) throw SchemaError(where + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

SolutionTable table_from_json(const json& j) {
  SolutionTable t;
  t.columns = string_list(member(j, "columns", "truth"), "truth.columns");
  const json& rows = member(j, "rows", "truth");
  if (!rows.is_array()) throw SchemaError("truth.rows must be an array");
  for (const json& r : rows) {
    if (!r.is_array() || r.size() != t.columns.size()) {
      throw SchemaError("truth.rows entries must have one cell per column");
    }
    std::vector<Cell> row;
    for (const json& c : r) {
      if (c.is_number_integer()) {
        row.emplace_back(c.get<std::int64_t>());
      } else if (c.is_string()) {
        row.emplace_back(c.get<std::string>());
      } else {
        throw SchemaError("truth cells must be integers or strings");
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (j.contains("key") && !j.at("key").is_null()) {
    const json& key = j.at("key");
    if (!key.is_string()) throw SchemaError("truth.key must be a column name or null");
    t.key_column = t.column_index(key.get<std::string>());
    if (!t.key_column) throw SchemaError("truth.key '" + key.get<std::string>() + "' is not a column");
  }
  return t;
}

ordered_json task_to_json(const PuzzleTask& t) {
  ordered_json j;
  j["id"] = t.id;
  j["size"] = t.size;
  j["puzzle"] = t.puzzle;
  j["format"] = t.format.to_json();
  j["truth"] = table_to_json(t.truth);
  return j;
}

PuzzleTask task_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("task must be a JSON object");
  PuzzleTask t;
  t.id = string_member(j, "id", "task");
  t.size = string_member(j, "size", "task");
  if (!parse_size(t.size)) throw SchemaError("task: size '" + t.size + "' is not of the form NxM");
  t.puzzle = string_member(j, "puzzle", "task");
  const json& format = member(j, "format", "task");
  t.format.columns = string_list(member(format, "columns", "format"), "format.columns");
  t.truth = table_from_json(member(j, "truth", "task"));
  return t;
}

Dataset load_dataset(const std::string& path, const DatasetAdapter& adapter) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  Dataset d;
  std::string line;
  std::size_t line_no = 0;
  std::size_t non_blank = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++non_blank;
    try {
      const json j = json::parse(line);
      d.tasks.push_back(adapter ? adapter(j) : task_from_json(j));
    } catch (const json::exception& e) {
      d.issues.push_back({line_no, std::string("invalid JSON: ") + e.what()});
    } catch (const SchemaError& e) {
      d.issues.push_back({line_no, e.what()});
    }
  }
  if (non_blank > 0 && d.tasks.empty()) {
    throw SchemaError("no usable line in '" + path + "'; first problem at line " +
                      std::to_string(d.issues.front().line) + ": " + d.issues.front().message);
  }
  return d;
}

void write_dataset(const std::string& path, const std::vector<PuzzleTask>& tasks) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset '" + path + "'");
  for (const PuzzleTask& t : tasks) out << task_to_json(t).dump() << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace logic_forge::bench
