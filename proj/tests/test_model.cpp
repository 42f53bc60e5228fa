#include "doctest.h"
#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/frontend/parser.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/dump.hpp"
#include "logic_forge/model/lower.hpp"
#include "logic_forge/solver/brute_force.hpp"
#include "support/files.hpp"
#include "support/pipeline.hpp"
#include "support/random_program.hpp"

using namespace logic_forge;
using model::ConstraintExpr;
using model::Op;

namespace {

frontend::Stmt stmt(frontend::Stmt::Kind kind, std::int64_t tag) {
  frontend::Stmt s;
  s.kind = kind;
  s.value = frontend::Expr::int_lit(tag, {});
  return s;
}

}  // namespace

TEST_CASE("six-house program materialises instances and all-different groups") {
  const auto m = test_support::lower_source(test_support::read_data("six_houses.py"));
  CHECK(m.vars.size() == 6 * 4);
  CHECK(m.alldiff_groups.size() == 4);
  for (const auto& g : m.alldiff_groups) CHECK(g.size() == 6);
  CHECK(m.vars[0].name == "houses[0].house_number");
  CHECK(m.vars[4].name == "houses[1].house_number");
  REQUIRE(m.groups.size() == 1);
  CHECK(m.groups[0].position_field == std::size_t{0});
}

TEST_CASE("nondet clue lowers to a selector and two elem constraints") {
  const auto m = test_support::lower_source(test_support::read_data("six_houses.py"));
  REQUIRE(m.selectors.size() == 2);
  CHECK(m.selectors[0].name == "bob");
  CHECK(m.selectors[0].list_len == 6);
  CHECK(m.selectors[0].element_class == "House");
  REQUIRE(m.constraints.size() == 4);
  // "Bob" is the second name and "xiaomi mi 11" the first phone.
  CHECK(m.constraints[0] == ConstraintExpr::binary(Op::Eq, ConstraintExpr::elem(0, 1),
                                                   ConstraintExpr::constant(1)));
  CHECK(m.constraints[1] == ConstraintExpr::binary(Op::Eq, ConstraintExpr::elem(0, 2),
                                                   ConstraintExpr::constant(0)));
  CHECK(m.constraints[3] == ConstraintExpr::binary(Op::Eq, ConstraintExpr::elem(1, 0),
                                                   ConstraintExpr::constant(4)));
}

TEST_CASE("minimal model") {
  const auto m = test_support::lower_source(
      "class A:\n    f: Domain[int, range(1, 2)]\n\nclass S:\n    xs: list[A, 1]\n\n"
      "def v(s: S) -> None:\n    x = nondet(s.xs)\n    assume(x.f == 1)\n");
  REQUIRE(m.vars.size() == 1);
  CHECK(m.vars[0].domain == model::VarDomain::range(1, 2));
  CHECK(m.constraints.size() == 1);
  CHECK(model::dump(m) ==
        "xs[0].f : [1, 2)\n"
        "s0 x : xs[0..1)\n"
        "assume (== (elem s0 f) 1)\n");
}

TEST_CASE("dump is stable") {
  const auto m = test_support::lower_source(
      "class P:\n    pos: Unique[Domain[int, range(1, 3)]]\n    c: Unique[Domain[str, \"red\", \"blue\"]]\n\n"
      "class S:\n    ps: list[P, 2]\n\n"
      "def v(s: S) -> None:\n    r = nondet(s.ps)\n    assume(r.c == \"red\")\n"
      "    assert abs(r.pos - s.ps[0].pos) != 1 or not r.pos > 1\n");
  CHECK(model::dump(m) ==
        "ps[0].pos : [1, 3)\n"
        "ps[0].c : {\"red\", \"blue\"}\n"
        "ps[1].pos : [1, 3)\n"
        "ps[1].c : {\"red\", \"blue\"}\n"
        "s0 r : ps[0..2)\n"
        "alldiff {ps[0].pos, ps[1].pos}\n"
        "alldiff {ps[0].c, ps[1].c}\n"
        "assume (== (elem s0 c) 0)\n"
        "assume (or (!= (abs (- (elem s0 pos) ps[0].pos)) 1) (not (> (elem s0 pos) 1)))\n");
}

TEST_CASE("assert rewrites to assume") {
  using K = frontend::Stmt::Kind;
  const auto out = model::rewrite_assert_as_assume({stmt(K::Assume, 1), stmt(K::Assert, 2)});
  REQUIRE(out.size() == 2);
  CHECK(out[0].kind == K::Assume);
  CHECK(out[1].kind == K::Assume);
  CHECK(out[1].value.int_value == 2);
  CHECK(model::rewrite_assert_as_assume({}).empty());
  const auto dup = model::rewrite_assert_as_assume({stmt(K::Assert, 3), stmt(K::Assert, 3)});
  REQUIRE(dup.size() == 2);
  CHECK(dup[0].kind == K::Assume);
  CHECK(dup[1].kind == K::Assume);
}

TEST_CASE("decode of a one-var model") {
  const auto m = test_support::lower_source(
      "class A:\n    f: Domain[int, range(1, 2)]\n\nclass S:\n    xs: list[A, 1]\n\n"
      "def v(s: S) -> None:\n    pass\n");
  const auto t = model::decode(m, model::Assignment{{1}, {}});
  CHECK(t.columns == std::vector<std::string>{"f"});
  CHECK(t.rows == std::vector<std::vector<Cell>>{{std::int64_t{1}}});
  CHECK_THROWS_AS(model::decode(m, model::Assignment{{}, {}}), model::DecodeError);
}

TEST_CASE("root scalar fields form their own group") {
  const auto m = test_support::lower_source(
      "class S:\n    a: Domain[int, range(0, 3)]\n    b: Domain[str, \"x\", \"y\"]\n\n"
      "def v(s: S) -> None:\n    assert s.a > 1\n    assert s.b == \"y\"\n");
  REQUIRE(m.groups.size() == 1);
  CHECK_FALSE(m.groups[0].is_list);
  CHECK(m.vars[0].name == "s.a");
  const auto t = model::decode(m, model::Assignment{{2, 1}, {}});
  CHECK(t.rows == std::vector<std::vector<Cell>>{{std::int64_t{2}, "y"}});
}

TEST_CASE("indexed lists keep instance order") {
  const auto m = test_support::lower_source(
      "class P:\n    pos: Unique[Domain[int, range(1, 3)]]\n\nclass S:\n    ps: list[P, 2]\n\n"
      "def v(s: S) -> None:\n    assert s.ps[0].pos == 2\n");
  CHECK(m.groups[0].indexed);
  CHECK_FALSE(m.groups[0].position_field.has_value());
  const auto t = model::decode(m, model::Assignment{{2, 1}, {}});
  CHECK(t.rows == std::vector<std::vector<Cell>>{{std::int64_t{2}}, {std::int64_t{1}}});
}

TEST_CASE("property: lowering is deterministic and counts match the source") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::string text = test_support::RandomProgram(seed * 31).generate();
    CAPTURE(text);
    const auto checked = frontend::parse_and_check(frontend::SourceText{text, "p"});
    const auto a = model::lower(checked);
    const auto b = model::lower(checked);
    CHECK(model::dump(a) == model::dump(b));
    CHECK(a.constraints == b.constraints);

    std::size_t expected_vars = 0;
    for (const auto& g : a.groups) expected_vars += g.instance_count() * g.fields.size();
    CHECK(a.vars.size() == expected_vars);
    std::size_t nondets = 0;
    for (std::size_t at = text.find("nondet("); at != std::string::npos; at = text.find("nondet(", at + 1)) {
      ++nondets;
    }
    CHECK(a.selectors.size() == nondets);
    CHECK_NOTHROW(model::validate_model(a));
  }
}

TEST_CASE("property: decode and encode are inverse on canonical assignments") {
  int checked_solutions = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const std::string text = test_support::RandomProgram(seed * 101).generate();
    CAPTURE(text);
    const auto m = test_support::lower_source(text);
    solver::BruteForceOptions options;
    options.max_solutions = 20;
    for (const auto& a : solver::brute_force(m, options).solutions) {
      const auto table = model::decode(m, a);
      const auto back = model::encode(m, table);
      CHECK(model::decode(m, back) == table);
      const auto& g = m.groups[m.primary_group];
      for (const auto& inst : g.vars) {
        for (model::VarId v : inst) {
          CHECK(back.vars[static_cast<std::size_t>(v)] == a.vars[static_cast<std::size_t>(v)]);
        }
      }
      ++checked_solutions;
    }
  }
  CHECK(checked_solutions > 100);
}
