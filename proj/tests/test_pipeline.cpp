#include "doctest.h"
#include "helpers.hpp"
#include "loctame/generate.hpp"
#include "loctame/pipeline.hpp"

using namespace loctame;

namespace {

bool first_query(const CBox& b, PipelineOptions opt = {}) {
  return Reasoner(b, opt).check(b.queries[0].lhs, b.queries[0].rhs).holds;
}

}  // namespace

TEST_CASE("worked examples hold in both modes") {
  for (const char* f : {"baader.cbox", "endocarditis.cbox", "price.cbox", "routes.cbox"}) {
    CAPTURE(f);
    CBox b = load(f);
    CHECK(first_query(b, {Mode::Chase, false, true}));
    CHECK(first_query(b, {Mode::Instantiate, false, true}));
  }
}

TEST_CASE("weakened examples no longer hold") {
  CBox b = load("endocarditis.cbox");
  std::erase_if(b.axioms, [](const Axiom& a) {
    const auto* ri = std::get_if<RoleInclusion>(&a);
    return ri && ri->head == "part-of" && ri->tail.empty();
  });
  CHECK_FALSE(first_query(b, {Mode::Chase, false, true}));
  CBox r = load("routes.cbox");
  r.axioms.pop_back();
  CHECK_FALSE(first_query(r));
}

TEST_CASE("trivial queries") {
  CBox b = parse_cbox("decl role r : 2\nA sub exists r . B\n? bot sub X\n? X sub top\n? X sub X\n? top sub X\n");
  Reasoner rs(b);
  CHECK(rs.check(b.queries[0].lhs, b.queries[0].rhs).holds);
  CHECK(rs.check(b.queries[1].lhs, b.queries[1].rhs).holds);
  CHECK(rs.check(b.queries[2].lhs, b.queries[2].rhs).holds);
  CHECK_FALSE(rs.check(b.queries[3].lhs, b.queries[3].rhs).holds);
}

TEST_CASE("queries across sorts are rejected") {
  CBox b = parse_cbox("decl role p : (concept, num)\nA sub exists p . num up 1\n");
  Reasoner rs(b);
  CHECK_THROWS_AS(rs.check(Concept::named("A"), Concept::num(IntervalConcept::up(Endpoint{Rational(1)}))), Error);
}

TEST_CASE("batch verdicts equal per-query verdicts") {
  Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    CBox b = random_extended(rng);
    auto names = b.concept_names();
    if (names.empty()) continue;
    std::vector<std::pair<Concept, Concept>> qs;
    for (int k = 0; k < 8; ++k) qs.push_back({random_concept(rng, b, names, 1), random_concept(rng, b, names, 1)});
    Reasoner rs(b, {Mode::Chase, false, true});
    BatchResult batch = rs.check_batch(qs);
    for (size_t k = 0; k < qs.size(); ++k) CHECK(batch.holds[k] == rs.check(qs[k].first, qs[k].second).holds);
  }
}

TEST_CASE("modes agree on extended CBoxes") {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    CBox b = random_extended(rng);
    auto names = b.concept_names();
    if (names.empty()) continue;
    Concept l = random_concept(rng, b, names, 2), r = random_concept(rng, b, names, 2);
    CAPTURE(render(b));
    CHECK(Reasoner(b, {Mode::Chase, false, true}).check(l, r).holds ==
          Reasoner(b, {Mode::Instantiate, false, true}).check(l, r).holds);
  }
}

TEST_CASE("classification is reflexive and transitive") {
  Rng rng(63);
  for (int i = 0; i < 40; ++i) {
    CBox b = random_normal_el(rng);
    auto names = b.concept_names();
    size_t n = names.size();
    std::vector<std::pair<Concept, Concept>> qs;
    for (const auto& a : names)
      for (const auto& c : names) qs.push_back({Concept::named(a), Concept::named(c)});
    auto h = Reasoner(b).check_batch(qs).holds;
    for (size_t x = 0; x < n; ++x) {
      CHECK(h[x * n + x]);
      for (size_t y = 0; y < n; ++y)
        for (size_t z = 0; z < n; ++z)
          if (h[x * n + y] && h[y * n + z]) CHECK(h[x * n + z]);
    }
  }
}

TEST_CASE("explanations name their clause instances") {
  CBox b = load("endocarditis.cbox");
  QueryResult r = Reasoner(b).check(b.queries[0].lhs, b.queries[0].rhs);
  std::string e = explain(r);
  CHECK(e.find("role has-loc o cont-in sub has-loc") != std::string::npos);
  CHECK(e.find("Endocarditis <= Heartdisease") != std::string::npos);
  CHECK(replay(r.sat.result().trace, r.solved_problem()));
  CHECK(show_psi(r).find("f_has-loc(HeartValve)") != std::string::npos);

  CBox refl = parse_cbox("? A sub A\n");
  QueryResult rr = Reasoner(refl).check(refl.queries[0].lhs, refl.queries[0].rhs);
  CHECK(rr.holds);
  CHECK(explain(rr).find("1.") != std::string::npos);
  CHECK(explain(rr).find("2.") == std::string::npos);
}

TEST_CASE("stage timings are recorded") {
  CBox b = load("baader.cbox");
  QueryResult r = Reasoner(b).check(b.queries[0].lhs, b.queries[0].rhs);
  CHECK(r.micros.total() > 0);
  CHECK(r.red.psi.size() == 6);
}
