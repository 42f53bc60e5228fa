#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logic_forge/table.hpp"

namespace logic_forge::bench {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Puzzle text that does not follow the rendered layout.
class PuzzleTextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Feature {
  std::string name;  // lowercase identifier
  std::vector<std::string> values;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// "The person whose <feature> is <value>".
struct FeatureRef {
  std::string feature;
  std::string value;

  friend bool operator==(const FeatureRef&, const FeatureRef&) = default;
};

enum class ClueKind { SamePerson, AtPosition, NotAtPosition, DirectlyLeft, LeftOf, NextTo };

std::string_view to_string(ClueKind kind);

struct Clue {
  ClueKind kind = ClueKind::SamePerson;
  FeatureRef a;
  FeatureRef b;      // unused by AtPosition / NotAtPosition
  int position = 0;  // AtPosition / NotAtPosition, 1-based

  friend bool operator==(const Clue&, const Clue&) = default;
};

/// Name of the position column and field in tables and generated programs.
inline constexpr const char* kPositionField = "house";

struct PuzzleInstance {
  std::string id;
  int n_entities = 0;
  int n_features = 0;
  std::vector<Feature> features;
  std::vector<Clue> clues;
  std::string text;
  /// Columns: position, then one per feature; rows ordered by position.
  SolutionTable truth;
};

/// "4x4" style label: entities x features.
std::string size_label(int n_entities, int n_features);
/// Parses "4x4" (also accepts "4×4"); nullopt when malformed.
std::optional<std::pair<int, int>> parse_size(const std::string& label);

enum class ShapeClass { Easy, Hard, Unclassified };
ShapeClass classify_shape(int n_entities, int n_features);
std::string_view to_string(ShapeClass c);

/// True iff the clue holds in `truth`.
bool clue_holds(const Clue& clue, const SolutionTable& truth);

/// Natural-language rendering: a header, one line per feature, numbered clues.
std::string render_text(const PuzzleInstance& instance);
std::string render_clue(const Clue& clue);

/// Structure recovered from render_text() output (truth is left empty).
PuzzleInstance parse_text(const std::string& text);

/// Truth table for the given features where `assignment[f][h]` is the value
/// index of feature f in house h.
SolutionTable make_truth(const std::vector<Feature>& features,
                         const std::vector<std::vector<std::size_t>>& assignment);

/// The 4-house example: four people, their jobs, favourite book genres and
/// phones, with ten clues and its published unique solution.
PuzzleInstance example_puzzle();

}  // namespace logic_forge::bench
