#include "doctest.h"
#include "helpers.hpp"
#include "loctame/generate.hpp"
#include "loctame/syntax.hpp"

using namespace loctame;

TEST_CASE("parse concepts and role declarations") {
  CBox b = parse_cbox(
      "decl role r : 2\n"
      "decl role t : 3\n"
      "A sub exists r . (B and C)\n"
      "exists t . (A, top) sub bot\n");
  REQUIRE(b.axioms.size() == 2);
  CHECK(b.sig("t").arity() == 3);
  const auto& g = std::get<Gci>(b.axioms[0]);
  CHECK(g.lhs == Concept::named("A"));
  CHECK(g.rhs == Concept::exists("r", {Concept::conj(Concept::named("B"), Concept::named("C"))}));
  CHECK(std::get<Gci>(b.axioms[1]).rhs.kind == Concept::Kind::Bottom);
}

TEST_CASE("equiv gives two inclusions") {
  CBox b = parse_cbox("A equiv B and C\n");
  CHECK(b.axioms.size() == 2);
}

TEST_CASE("role axioms") {
  CBox b = parse_cbox(
      "decl role r : 2\ndecl role s : 2\ndecl role t : 3\n"
      "role r o s sub r\n"
      "role r o s sub id\n"
      "role r sub s guard A\n"
      "role t o (r, s) sub t\n"
      "role u = restrict t at 3 to C\n");
  REQUIRE(b.axioms.size() == 5);
  auto ri = std::get<RoleInclusion>(b.axioms[1]);
  CHECK_FALSE(ri.rhs.has_value());
  CHECK(std::get<RoleInclusion>(b.axioms[2]).guard == Concept::named("A"));
  CHECK(std::get<RoleInclusion>(b.axioms[3]).tuple);
  CHECK(b.sig("u").arity() == 2);
  CHECK(b.restriction("u")->position == 3);
}

TEST_CASE("num sort literals") {
  CBox b = load("price.cbox");
  CHECK(b.sig("has-weight-price").sorts[2] == Sort::Num);
  CBox q = parse_cbox("decl role p : (concept, num)\nA sub exists p . num [0, 3/2]\n");
  const auto& c = std::get<Gci>(q.axioms[0]).rhs.args[0];
  CHECK(c.kind == Concept::Kind::Interval);
  CHECK(c.interval.hi.literal() == Rational(3, 2));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_cbox("decl role r : 2\nA sub exists r .\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.loc().line == 2);
  }
  CHECK_THROWS_AS(parse_cbox("decl role r : 2\nA sub exists r . (B, C)\n"), ParseError);
  CHECK_THROWS_AS(parse_cbox("A sub sub B\n"), ParseError);
  CHECK_THROWS_AS(parse_cbox("decl role r : 2\nrole s = restrict r at 2 to A\n"), ParseError);
}

TEST_CASE("split literals") {
  CBox b = load("sgc.interp");
  REQUIRE(b.split.size() == 4);
  CHECK(b.split[3].negated);
  CHECK(b.split[3].side == Side::B);
  CHECK(parse_cbox(render(b)) == b);
}

TEST_CASE("render and parse round trip on random CBoxes") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    CBox b = i % 2 ? random_extended(rng) : random_normal_el(rng);
    CAPTURE(render(b));
    CHECK(parse_cbox(render(b)) == b);
  }
  for (const char* f : {"baader.cbox", "endocarditis.cbox", "price.cbox", "routes.cbox"}) {
    CBox b = load(f);
    CHECK(parse_cbox(render(b)) == b);
  }
}
