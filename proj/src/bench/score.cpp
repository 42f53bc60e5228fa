#include "logic_forge/bench/score.hpp"

#include <algorithm>
#include <cctype>

#include "logic_forge/agent/output_format.hpp"

namespace logic_forge::bench {

namespace {

std::string folded(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(first, last - first + 1);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<std::size_t> find_column(const SolutionTable& t, const std::string& name) {
  const std::string want = agent::normalise_column(name);
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (agent::normalise_column(t.columns[i]) == want) return i;
  }
  return std::nullopt;
}

}  // namespace

bool cells_match(const Cell& predicted, const Cell& truth) {
  const auto* pi = std::get_if<std::int64_t>(&predicted);
  const auto* ti = std::get_if<std::int64_t>(&truth);
  if (pi != nullptr && ti != nullptr) return *pi == *ti;
  return folded(cell_to_string(predicted)) == folded(cell_to_string(truth));
}

double SplitScore::puzzle_accuracy() const {
  return tasks == 0 ? 0.0 : static_cast<double>(exact) / static_cast<double>(tasks);
}

double SplitScore::cell_accuracy() const {
  return total_cells == 0 ? 0.0 : static_cast<double>(correct_cells) / static_cast<double>(total_cells);
}

nlohmann::ordered_json SplitScore::to_json() const {
  nlohmann::ordered_json j;
  j["tasks"] = tasks;
  j["exact"] = exact;
  j["puzzle_accuracy"] = puzzle_accuracy();
  j["correct_cells"] = correct_cells;
  j["total_cells"] = total_cells;
  j["cell_accuracy"] = cell_accuracy();
  return j;
}

TaskScore score_task(const TaskResult& r) {
  TaskScore s;
  s.id = r.id;
  s.size = r.size;
  s.status = r.status;
  s.attempts = r.attempts;
  if (const auto shape = parse_size(r.size)) s.shape = classify_shape(shape->first, shape->second);

  const SolutionTable& truth = r.truth;
  std::vector<std::size_t> scored;
  for (std::size_t c = 0; c < truth.columns.size(); ++c) {
    if (!truth.key_column || c != *truth.key_column) scored.push_back(c);
  }
  s.total_cells = scored.size() * truth.rows.size();
  if (!r.predicted) return s;

  const SolutionTable& pred = *r.predicted;
  std::vector<std::optional<std::size_t>> pred_col;
  for (std::size_t c : scored) pred_col.push_back(find_column(pred, truth.columns[c]));
  const std::optional<std::size_t> pred_key =
      truth.key_column ? find_column(pred, truth.columns[*truth.key_column]) : std::nullopt;

  for (std::size_t row = 0; row < truth.rows.size(); ++row) {
    const std::vector<Cell>* match = nullptr;
    if (truth.key_column) {
      if (pred_key) {
        const Cell& key = truth.rows[row][*truth.key_column];
        const auto it = std::find_if(pred.rows.begin(), pred.rows.end(), [&](const auto& p) {
          return *pred_key < p.size() && cells_match(p[*pred_key], key);
        });
        if (it != pred.rows.end()) match = &*it;
      }
    } else if (row < pred.rows.size()) {
      match = &pred.rows[row];
    }
    if (match == nullptr) continue;
    for (std::size_t i = 0; i < scored.size(); ++i) {
      if (pred_col[i] && *pred_col[i] < match->size() &&
          cells_match((*match)[*pred_col[i]], truth.rows[row][scored[i]])) {
        ++s.correct_cells;
      }
    }
  }
  s.exact = s.correct_cells == s.total_cells && pred.rows.size() == truth.rows.size();
  return s;
}

EvalReport score(const std::vector<TaskResult>& results) {
  if (results.empty()) throw EmptyInput("no task results to score");
  EvalReport report;
  for (const TaskResult& r : results) {
    TaskScore s = score_task(r);
    auto add = [&](SplitScore& split) {
      ++split.tasks;
      split.exact += s.exact ? 1 : 0;
      split.correct_cells += s.correct_cells;
      split.total_cells += s.total_cells;
    };
    add(report.overall);
    if (s.shape == ShapeClass::Easy) add(report.easy);
    if (s.shape == ShapeClass::Hard) add(report.hard);
    ++report.status_counts[s.status];
    report.tasks.push_back(std::move(s));
  }
  return report;
}

nlohmann::ordered_json EvalReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["overall"] = overall.to_json();
  j["easy"] = easy.to_json();
  j["hard"] = hard.to_json();
  j["status_counts"] = status_counts;
  j["interrupted"] = interrupted;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const TaskScore& t : tasks) {
    nlohmann::ordered_json e;
    e["id"] = t.id;
    e["size"] = t.size;
    e["shape"] = to_string(t.shape);
    e["status"] = t.status;
    e["attempts"] = t.attempts;
    e["correct_cells"] = t.correct_cells;
    e["total_cells"] = t.total_cells;
    e["exact"] = t.exact;
    list.push_back(std::move(e));
  }
  j["tasks"] = std::move(list);
  if (include_timing) j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

}  // namespace logic_forge::bench
