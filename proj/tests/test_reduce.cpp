#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "loctame/generate.hpp"
#include "loctame/pipeline.hpp"
#include "loctame/reduce.hpp"

using namespace loctame;

namespace {

Reduction reduction_of(const CBox& b, Mode mode = Mode::Chase) {
  Reasoner rs(b, {mode});
  return rs.check(b.queries[0].lhs, b.queries[0].rhs).red;
}

}  // namespace

TEST_CASE("Mon instances are counted pairwise per operator") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    CBox b = random_extended(rng);
    auto names = b.concept_names();
    if (names.empty()) continue;
    Reasoner rs(b);
    QueryResult r = rs.check(random_concept(rng, b, names, 1), random_concept(rng, b, names, 1));
    auto mons = std::count_if(r.red.instances.begin(), r.red.instances.end(), [&](const TermClause& c) {
      return c.axiom != kStrictAxiom && r.red.alg.axioms[c.axiom].kind == AlgAxiom::Kind::Mon;
    });
    CHECK(static_cast<size_t>(mons) == mon_instance_count(r.red.alg.store, r.red.psi));
  }
}

TEST_CASE("the cyclic TBox reduction contains e2 <= e1 -> d2 <= d1") {
  CBox b = load("baader.cbox");
  Reduction red = reduction_of(b);
  TermStore& st = red.alg.store;
  OpId f1 = *st.find_op("r1");
  TermId e1 = st.meet({st.constant("P1"), st.constant("P2")});
  TermId e2 = st.meet({st.constant("A1"), st.constant("A2")});
  TermId d1 = st.apply(f1, {e1}), d2 = st.apply(f1, {e2});
  bool found = std::any_of(red.instances.begin(), red.instances.end(), [&](const TermClause& c) {
    return c.premises.size() == 1 && c.premises[0] == GroundAtom{e2, e1} && c.conclusion == GroundAtom{d2, d1} &&
           axiom_label(red.alg.axioms, c) == "Mon(f_r1)";
  });
  CHECK(found);
  // and the emitted problem carries it as a labeled clause
  const auto& names = red.problem.names;
  auto name = [&](TermId t) { return names[red.purified.const_of.at(t)]; };
  std::string line = "clause " + name(e2) + "<=" + name(e1) + " -> " + name(d2) + "<=" + name(d1) + "  # Mon(f_r1)";
  CHECK(dump(red.problem).find(line) != std::string::npos);
}

TEST_CASE("purification names operator terms and meets") {
  CBox b = load("endocarditis.cbox");
  Reduction red = reduction_of(b);
  const Purified& p = red.purified;
  for (ConstId c = 0; c < p.term_of.size(); ++c) {
    TermKind k = red.alg.store.node(p.term_of[c]).kind;
    if (k == TermKind::Apply || k == TermKind::Meet) CHECK(p.base.names[c].starts_with("$"));
    CHECK(p.const_of.at(p.term_of[c]) == c);
  }
  for (const auto& m : p.meets) CHECK(m.operands.size() >= 2);
}

TEST_CASE("semilattice clause counts match the emitted problems") {
  Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    CBox b = random_extended(rng);
    auto names = b.concept_names();
    if (names.empty()) continue;
    b.queries.push_back({random_concept(rng, b, names, 1), random_concept(rng, b, names, 1)});
    for (Mode m : {Mode::Chase, Mode::Instantiate}) {
      Reduction red = reduction_of(b, m);
      CHECK(sl_clause_count(red.purified, m) == red.problem.clauses.size());
      CHECK(sl_instantiate(red.purified, m).clauses.size() == red.problem.clauses.size());
    }
  }
}

TEST_CASE("instantiate mode spells out transitivity") {
  CBox b = load("baader.cbox");
  Reduction chase = reduction_of(b, Mode::Chase), inst = reduction_of(b, Mode::Instantiate);
  CHECK(chase.problem.builtin_transitivity);
  CHECK_FALSE(inst.problem.builtin_transitivity);
  size_t n = 0;
  for (Sort s : inst.problem.sorts) n += s == Sort::Concept;
  CHECK(inst.problem.clauses.size() >= n * (n - 1) * (n - 2));
}

TEST_CASE("strictness only when bottom occurs") {
  CBox plain = parse_cbox("decl role r : 2\nA sub exists r . B\n? A sub exists r . top\n");
  for (const auto& c : reduction_of(plain).instances) CHECK(c.axiom != kStrictAxiom);
  CBox bot = parse_cbox("decl role r : 2\nB sub bot\n? exists r . B sub bot\n");
  Reduction red = reduction_of(bot);
  CHECK(std::any_of(red.instances.begin(), red.instances.end(),
                    [](const TermClause& c) { return c.axiom == kStrictAxiom; }));
  CHECK(Reasoner(bot).check(bot.queries[0].lhs, bot.queries[0].rhs).holds);
}

TEST_CASE("chain family clause counts grow cubically") {
  size_t prev = 0;
  for (int n : {10, 20, 40}) {
    CBox b = chain_family(n);
    Reduction red = reduction_of(b, Mode::Chase);
    size_t count = sl_clause_count(red.purified, Mode::Instantiate);
    double c = static_cast<double>(count) / (static_cast<double>(n) * n * n);
    CHECK(c > 1.0);
    CHECK(c < 16.0);
    if (prev) CHECK(static_cast<double>(count) / static_cast<double>(prev) <= 9.0);
    prev = count;
  }
}
