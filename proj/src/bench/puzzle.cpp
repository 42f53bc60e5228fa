#include "logic_forge/bench/puzzle.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace logic_forge::bench {

std::string_view to_string(ClueKind kind) {
  switch (kind) {
    case ClueKind::SamePerson: return "SamePerson";
    case ClueKind::AtPosition: return "AtPosition";
    case ClueKind::NotAtPosition: return "NotAtPosition";
    case ClueKind::DirectlyLeft: return "DirectlyLeft";
    case ClueKind::LeftOf: return "LeftOf";
    case ClueKind::NextTo: return "NextTo";
  }
  return "?";
}

std::string size_label(int n_entities, int n_features) {
  return std::to_string(n_entities) + "x" + std::to_string(n_features);
}

std::optional<std::pair<int, int>> parse_size(const std::string& label) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:x|X|×)\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(label, m, re)) return std::nullopt;
  return std::make_pair(std::stoi(m[1].str()), std::stoi(m[2].str()));
}

ShapeClass classify_shape(int n, int f) {
  static const std::set<std::pair<int, int>> easy = {{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}};
  if (easy.count({n, f}) != 0) return ShapeClass::Easy;
  const bool hard = (n == 3 && f >= 4 && f <= 6) || (n >= 4 && n <= 6 && f >= 2 && f <= 6);
  return hard ? ShapeClass::Hard : ShapeClass::Unclassified;
}

std::string_view to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::Easy: return "easy";
    case ShapeClass::Hard: return "hard";
    case ShapeClass::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

std::optional<std::int64_t> position_of(const FeatureRef& ref, const SolutionTable& truth) {
  const auto c = truth.column_index(ref.feature);
  const auto p = truth.column_index(kPositionField);
  if (!c || !p) return std::nullopt;
  for (const auto& row : truth.rows) {
    if (const auto* s = std::get_if<std::string>(&row[*c]); s != nullptr && *s == ref.value) {
      return std::get<std::int64_t>(row[*p]);
    }
  }
  return std::nullopt;
}

std::string person(const FeatureRef& r) { return "the person whose " + r.feature + " is " + r.value; }

std::string capitalised(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

bool clue_holds(const Clue& clue, const SolutionTable& truth) {
  const auto pa = position_of(clue.a, truth);
  if (!pa) return false;
  switch (clue.kind) {
    case ClueKind::AtPosition: return *pa == clue.position;
    case ClueKind::NotAtPosition: return *pa != clue.position;
    default: break;
  }
  const auto pb = position_of(clue.b, truth);
  if (!pb) return false;
  switch (clue.kind) {
    case ClueKind::SamePerson: return *pa == *pb;
    case ClueKind::DirectlyLeft: return *pa == *pb - 1;
    case ClueKind::LeftOf: return *pa < *pb;
    case ClueKind::NextTo: return *pa - *pb == 1 || *pb - *pa == 1;
    default: return false;
  }
}

std::string render_clue(const Clue& c) {
  switch (c.kind) {
    case ClueKind::SamePerson:
      return capitalised(person(c.a)) + " is also " + person(c.b) + ".";
    case ClueKind::AtPosition:
      return capitalised(person(c.a)) + " lives in house " + std::to_string(c.position) + ".";
    case ClueKind::NotAtPosition:
      return capitalised(person(c.a)) + " does not live in house " + std::to_string(c.position) + ".";
    case ClueKind::DirectlyLeft:
      return capitalised(person(c.a)) + " lives exactly one house to the left of " + person(c.b) + ".";
    case ClueKind::LeftOf:
      return capitalised(person(c.a)) + " lives in a lower-numbered house than " + person(c.b) + ".";
    case ClueKind::NextTo:
      return capitalised(person(c.a)) + " and " + person(c.b) + " live in adjacent houses.";
  }
  return "";
}

std::string render_text(const PuzzleInstance& p) {
  std::ostringstream out;
  out << "There are " << p.n_entities << " houses in a row, numbered 1 (leftmost) to " << p.n_entities
      << " (rightmost). Each house holds one person, and no two people share a value for any of "
         "these attributes:\n";
  for (const Feature& f : p.features) {
    out << "- " << f.name << ":";
    for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? ", " : " ") << f.values[i];
    out << '\n';
  }
  out << "\nClues:\n";
  for (std::size_t k = 0; k < p.clues.size(); ++k) out << k + 1 << ". " << render_clue(p.clues[k]) << '\n';
  return out.str();
}

PuzzleInstance parse_text(const std::string& text) {
  static const std::regex header(R"(^There are (\d+) houses in a row\b.*$)");
  static const std::regex feature_line(R"(^- ([a-z_][a-z0-9_]*): (.+)$)");
  static const std::regex clue_line(R"(^(\d+)\. (.+)$)");
  static const std::string ref = R"([Tt]he person whose ([a-z_][a-z0-9_]*) is (.+?))";
  static const std::regex same("^" + ref + " is also " + ref + R"(\.$)");
  static const std::regex at("^" + ref + R"( lives in house (\d+)\.$)");
  static const std::regex not_at("^" + ref + R"( does not live in house (\d+)\.$)");
  static const std::regex directly("^" + ref + " lives exactly one house to the left of " + ref + R"(\.$)");
  static const std::regex left("^" + ref + " lives in a lower-numbered house than " + ref + R"(\.$)");
  static const std::regex next("^" + ref + " and " + ref + R"( live in adjacent houses\.$)");

  PuzzleInstance p;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "Clues:") continue;
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      p.n_entities = std::stoi(m[1].str());
      seen_header = true;
    } else if (std::regex_match(line, m, feature_line)) {
      Feature f;
      f.name = m[1].str();
      std::string rest = m[2].str();
      for (std::size_t start = 0;;) {
        const auto comma = rest.find(", ", start);
        f.values.push_back(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 2;
      }
      p.features.push_back(std::move(f));
    } else if (std::regex_match(line, m, clue_line)) {
      const std::string body = m[2].str();
      Clue c;
      std::smatch cm;
      auto refs = [&](bool two) {
        c.a = {cm[1].str(), cm[2].str()};
        if (two) c.b = {cm[3].str(), cm[4].str()};
      };
      if (std::regex_match(body, cm, same)) {
        c.kind = ClueKind::SamePerson;
        refs(true);
      } else if (std::regex_match(body, cm, not_at)) {
        c.kind = ClueKind::NotAtPosition;
        refs(false);
        c.position = std::stoi(cm[3].str());
      } else if (std::regex_match(body, cm, at)) {
        c.kind = ClueKind::AtPosition;
        refs(false);
        c.position = std::stoi(cm[3].str());
      } else if (std::regex_match(body, cm, directly)) {
        c.kind = ClueKind::DirectlyLeft;
        refs(true);
      } else if (std::regex_match(body, cm, left)) {
        c.kind = ClueKind::LeftOf;
        refs(true);
      } else if (std::regex_match(body, cm, next)) {
        c.kind = ClueKind::NextTo;
        refs(true);
      } else {
        throw PuzzleTextError("line " + std::to_string(line_no) + ": unrecognised clue");
      }
      p.clues.push_back(std::move(c));
    } else {
      throw PuzzleTextError("line " + std::to_string(line_no) + ": unrecognised line");
    }
  }
  if (!seen_header) throw PuzzleTextError("missing house count");
  p.n_features = static_cast<int>(p.features.size());
  for (const Clue& c : p.clues) {
    for (const FeatureRef* r : {&c.a, &c.b}) {
      if (r == &c.b && (c.kind == ClueKind::AtPosition || c.kind == ClueKind::NotAtPosition)) continue;
      const auto f = std::find_if(p.features.begin(), p.features.end(),
                                  [&](const Feature& x) { return x.name == r->feature; });
      if (f == p.features.end() || std::find(f->values.begin(), f->values.end(), r->value) == f->values.end()) {
        throw PuzzleTextError("clue refers to unknown value '" + r->value + "'");
      }
    }
  }
  p.text = text;
  return p;
}

SolutionTable make_truth(const std::vector<Feature>& features,
                         const std::vector<std::vector<std::size_t>>& assignment) {
  SolutionTable t;
  t.columns.push_back(kPositionField);
  for (const Feature& f : features) t.columns.push_back(f.name);
  const std::size_t n = assignment.empty() ? 0 : assignment[0].size();
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<Cell> row{static_cast<std::int64_t>(h + 1)};
    for (std::size_t f = 0; f < features.size(); ++f) row.emplace_back(features[f].values[assignment[f][h]]);
    t.rows.push_back(std::move(row));
  }
  t.key_column = 0;
  return t;
}

PuzzleInstance example_puzzle() {
  PuzzleInstance p;
  p.id = "example-4x4";
  p.n_entities = 4;
  p.n_features = 4;
  p.features = {
      {"name", {"alice", "eric", "arnold", "peter"}},
      {"occupation", {"artist", "engineer", "teacher", "doctor"}},
      {"book", {"fantasy", "science fiction", "mystery", "romance"}},
      {"phone", {"google pixel 6", "iphone 13", "oneplus 9", "samsung galaxy s21"}},
  };
  using K = ClueKind;
  p.clues = {
      {K::DirectlyLeft, {"occupation", "engineer"}, {"phone", "samsung galaxy s21"}, 0},
      {K::AtPosition, {"book", "fantasy"}, {}, 2},
      {K::NotAtPosition, {"name", "alice"}, {}, 2},
      {K::SamePerson, {"name", "eric"}, {"occupation", "teacher"}, 0},
      {K::SamePerson, {"phone", "samsung galaxy s21"}, {"book", "fantasy"}, 0},
      {K::SamePerson, {"phone", "iphone 13"}, {"book", "science fiction"}, 0},
      {K::LeftOf, {"book", "science fiction"}, {"phone", "oneplus 9"}, 0},
      {K::SamePerson, {"phone", "oneplus 9"}, {"name", "arnold"}, 0},
      {K::SamePerson, {"occupation", "doctor"}, {"book", "mystery"}, 0},
      {K::SamePerson, {"phone", "iphone 13"}, {"occupation", "teacher"}, 0},
  };
  // Value indices per house: alice/engineer/romance/pixel, peter/artist/fantasy/galaxy,
  // eric/teacher/science fiction/iphone, arnold/doctor/mystery/oneplus.
  p.truth = make_truth(p.features, {{0, 3, 1, 2}, {1, 0, 2, 3}, {3, 0, 1, 2}, {0, 3, 1, 2}});
  p.text = render_text(p);
  return p;
}

}  // namespace logic_forge::bench
