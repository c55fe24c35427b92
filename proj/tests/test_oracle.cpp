#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "loctame/generate.hpp"
#include "loctame/normalize.hpp"
#include "loctame/oracle.hpp"

using namespace loctame;

namespace {

bool brute_sat(int vars, const std::vector<std::vector<int>>& clauses) {
  for (unsigned m = 0; m < (1u << vars); ++m) {
    bool ok = true;
    for (const auto& c : clauses) {
      bool sat = false;
      for (int l : c) sat = sat || (((m >> (std::abs(l) - 1)) & 1) == (l > 0 ? 1u : 0u));
      ok = ok && sat;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("DPLL on small formulas") {
  Dpll d;
  int a = d.new_var(), b = d.new_var();
  d.add_clause({a + 1, b + 1});
  d.add_clause({-(a + 1)});
  REQUIRE(d.solve());
  CHECK_FALSE(d.value(a));
  CHECK(d.value(b));
  d.add_clause({-(b + 1)});
  CHECK_FALSE(d.solve());
}

TEST_CASE("DPLL pigeonhole 4 into 3") {
  Dpll d;
  int p[4][3];
  for (auto& row : p)
    for (int& v : row) v = d.new_var() + 1;
  for (auto& row : p) d.add_clause({row[0], row[1], row[2]});
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d.add_clause({-p[i][h], -p[j][h]});
  CHECK_FALSE(d.solve());
}

TEST_CASE("DPLL agrees with truth tables on random 3-SAT") {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 300; ++i) {
    int vars = 3 + static_cast<int>(rng() % 6);
    int n = static_cast<int>(rng() % (5 * vars));
    std::vector<std::vector<int>> cs;
    Dpll d;
    for (int v = 0; v < vars; ++v) d.new_var();
    for (int k = 0; k < n; ++k) {
      std::vector<int> c;
      for (int j = 0; j < 3; ++j) {
        int v = 1 + static_cast<int>(rng() % vars);
        c.push_back(rng() % 2 ? v : -v);
      }
      cs.push_back(c);
      d.add_clause(c);
    }
    bool sat = d.solve();
    CHECK(sat == brute_sat(vars, cs));
    if (sat)
      for (const auto& c : cs) {
        bool ok = false;
        for (int l : c) ok = ok || d.value(std::abs(l) - 1) == (l > 0);
        CHECK(ok);
      }
  }
}

TEST_CASE("completion classifies the cyclic TBox") {
  CBox b = load("baader.cbox");
  b.queries.clear();
  SubsumptionSet s = completion_classify(normalize(b));
  CHECK(s.subsumes("A1", "A2"));
  CHECK(s.subsumes("A2", "A3"));
  CHECK(s.subsumes("A3", "A2"));
  CHECK_FALSE(s.subsumes("A2", "A1"));
  CHECK_FALSE(s.subsumes("P1", "A1"));
  CHECK(completion_subsumes(b, load("baader.cbox").queries[0].lhs, Concept::named("A3")));
}

TEST_CASE("completion handles role chains and bottom") {
  CBox b = parse_cbox(
      "decl role r : 2\ndecl role s : 2\n"
      "A sub exists r . B\nB sub exists s . C\nrole r o s sub s\nexists s . C sub D\n"
      "E sub exists r . F\nF sub bot\n");
  SubsumptionSet s = completion_classify(normalize(b));
  CHECK(s.subsumes("A", "D"));
  CHECK(s.subsumes("E", "A"));
  CHECK_FALSE(s.subsumes("B", "A"));
}

TEST_CASE("empty CBox has a one-element countermodel") {
  CBox empty;
  auto m = bounded_model_search(empty, Concept::named("A"), Concept::named("B"), 3);
  REQUIRE(m.has_value());
  CHECK(m->model.size == 1);
  CHECK(extension(empty, m->model, Concept::named("A")).count(m->witness));
  CHECK_FALSE(extension(empty, m->model, Concept::named("B")).count(m->witness));
  CHECK_FALSE(bounded_model_search(empty, Concept::named("A"), Concept::named("A"), 3).has_value());
}

TEST_CASE("routes example has no small countermodel") {
  CBox b = load("routes.cbox");
  CHECK_FALSE(bounded_model_search(b, b.queries[0].lhs, b.queries[0].rhs, 3).has_value());
  b.axioms.pop_back();
  auto m = bounded_model_search(b, b.queries[0].lhs, b.queries[0].rhs, 3);
  REQUIRE(m.has_value());
  CHECK(is_model(b, m->model));
}

TEST_CASE("countermodels are models") {
  Rng rng(82);
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    CBox b = random_extended(rng);
    auto names = b.concept_names();
    if (names.empty()) continue;
    Concept l = random_concept(rng, b, names, 1), r = random_concept(rng, b, names, 1);
    auto m = bounded_model_search(b, l, r, 3);
    if (!m) continue;
    ++found;
    CHECK(is_model(b, m->model));
    CHECK(extension(b, m->model, l).count(m->witness));
    CHECK_FALSE(extension(b, m->model, r).count(m->witness));
  }
  CHECK(found > 0);
}

TEST_CASE("num sort is out of reach") {
  CBox b = load("price.cbox");
  CHECK_THROWS_AS(bounded_model_search(b, b.queries[0].lhs, b.queries[0].rhs, 2), UnsupportedConstruct);
}
