#include "logic_forge/bench/render_dsl.hpp"

#include <sstream>

#include "logic_forge/frontend/printer.hpp"

namespace logic_forge::bench {

using frontend::quote_string;
using frontend::SourceText;

SourceText render_dsl_classes(const PuzzleInstance& p) {
  std::ostringstream out;
  out << "class House:\n";
  out << "    " << kPositionField << ": Unique[Domain[int, range(1, " << p.n_entities + 1 << ")]]\n";
  for (const Feature& f : p.features) {
    out << "    " << f.name << ": Unique[Domain[str";
    for (const std::string& v : f.values) out << ", " << quote_string(v);
    out << "]]\n";
  }
  out << "\nclass PuzzleSolution:\n";
  out << "    houses: list[House, " << p.n_entities << "]\n";
  return SourceText{out.str(), p.id.empty() ? "<puzzle>" : p.id};
}

namespace {

void bind_local(std::ostream& out, const std::string& local, const FeatureRef& ref) {
  out << "    " << local << " = nondet(solution.houses)\n";
  out << "    assume(" << local << "." << ref.feature << " == " << quote_string(ref.value) << ")\n";
}

}  // namespace

SourceText render_dsl_validator(const PuzzleInstance& p) {
  std::ostringstream out;
  out << "def validate(solution: PuzzleSolution) -> None:\n";
  if (p.clues.empty()) out << "    pass\n";
  const std::string pos = kPositionField;
  for (std::size_t k = 0; k < p.clues.size(); ++k) {
    const Clue& c = p.clues[k];
    const std::string a = "a" + std::to_string(k + 1);
    const std::string b = "b" + std::to_string(k + 1);
    if (k != 0) out << '\n';
    out << "    # " << k + 1 << ": " << render_clue(c) << '\n';
    bind_local(out, a, c.a);
    switch (c.kind) {
      case ClueKind::SamePerson:
        out << "    assert " << a << "." << c.b.feature << " == " << quote_string(c.b.value) << '\n';
        continue;
      case ClueKind::AtPosition:
        out << "    assert " << a << "." << pos << " == " << c.position << '\n';
        continue;
      case ClueKind::NotAtPosition:
        out << "    assert " << a << "." << pos << " != " << c.position << '\n';
        continue;
      default:
        break;
    }
    bind_local(out, b, c.b);
    switch (c.kind) {
      case ClueKind::DirectlyLeft:
        out << "    assert " << a << "." << pos << " == " << b << "." << pos << " - 1\n";
        break;
      case ClueKind::LeftOf:
        out << "    assert " << a << "." << pos << " < " << b << "." << pos << '\n';
        break;
      case ClueKind::NextTo:
        out << "    assert abs(" << a << "." << pos << " - " << b << "." << pos << ") == 1\n";
        break;
      default:
        break;
    }
  }
  return SourceText{out.str(), p.id.empty() ? "<puzzle>" : p.id};
}

SourceText render_dsl(const PuzzleInstance& p) {
  SourceText classes = render_dsl_classes(p);
  classes.text += '\n';
  classes.text += render_dsl_validator(p).text;
  return classes;
}

SourceText OracleFormalizer::gen_data_structure(const std::string& puzzle_text,
                                                const agent::OutputFormat&) {
  try {
    return render_dsl_classes(parse_text(puzzle_text));
  } catch (const PuzzleTextError& e) {
    throw agent::ExtractionError(std::string("oracle formalizer: ") + e.what());
  }
}

SourceText OracleFormalizer::gen_constraints(const SourceText&, const std::string& puzzle_text) {
  try {
    return render_dsl_validator(parse_text(puzzle_text));
  } catch (const PuzzleTextError& e) {
    throw agent::ExtractionError(std::string("oracle formalizer: ") + e.what());
  }
}

}  // namespace logic_forge::bench
