#include <random>
#include <set>

#include "doctest.h"
#include "loctame/hornsat.hpp"

using namespace loctame;

namespace {

HornProblem random_problem(std::mt19937_64& rng, bool builtin) {
  HornProblem p;
  std::uniform_int_distribution<int> nc(2, 8);
  int n = nc(rng);
  for (int i = 0; i < n; ++i) p.add_const("c" + std::to_string(i));
  std::uniform_int_distribution<ConstId> pick(0, static_cast<ConstId>(n - 1));
  auto atom = [&] { return Atom{pick(rng), pick(rng)}; };
  std::uniform_int_distribution<int> count(0, 6), width(0, 3);
  for (int i = count(rng); i > 0; --i) p.facts.push_back(atom());
  for (int i = count(rng) * 2; i > 0; --i) {
    HornClause c;
    for (int k = width(rng); k > 0; --k) c.premises.push_back(atom());
    if (rng() % 8) c.conclusion = atom();
    p.clauses.push_back(c);
  }
  p.goal = atom();
  p.builtin_transitivity = builtin;
  return p;
}

// Transitivity as n³ explicit clauses.
HornProblem expand(HornProblem p) {
  p.builtin_transitivity = false;
  ConstId n = static_cast<ConstId>(p.size());
  for (ConstId x = 0; x < n; ++x)
    for (ConstId y = 0; y < n; ++y)
      for (ConstId z = 0; z < n; ++z) p.clauses.push_back({{{x, y}, {y, z}}, Atom{x, z}, 0});
  return p;
}

// Least model by naive iteration; nullopt when a ⊥ clause fires.
std::optional<std::set<Atom>> naive(const HornProblem& p) {
  std::set<Atom> m(p.facts.begin(), p.facts.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : p.clauses) {
      bool fire = true;
      for (const auto& a : c.premises) fire = fire && m.count(a);
      if (!fire) continue;
      if (!c.conclusion) return std::nullopt;
      changed |= m.insert(*c.conclusion).second;
    }
    if (p.builtin_transitivity)
      for (const auto& a : std::set<Atom>(m))
        for (const auto& b : std::set<Atom>(m))
          if (a.rhs == b.lhs) changed |= m.insert({a.lhs, b.rhs}).second;
  }
  return m;
}

}  // namespace

TEST_CASE("forward chaining on a small problem") {
  HornProblem p = parse_dump(
      "fact a <= b\n"
      "clause a<=b -> b<=c\n"
      "clause a<=c, b<=c -> d<=e  # two premises\n"
      "goal d <= e\n");
  p.builtin_transitivity = true;
  SolveResult r = solve(p);
  CHECK(r.holds(*p.goal));
  CHECK(replay(r.trace, p));
  auto support = r.trace.support(*p.goal);
  CHECK(r.trace.steps[support.back()].atom == *p.goal);
}

TEST_CASE("bottom clauses make the problem unsatisfiable") {
  HornProblem p = parse_dump("fact a <= b\nclause a<=b -> bot\n");
  SolveResult r = solve(p);
  CHECK(r.unsat);
  CHECK(r.bottom_clause == 0u);
}

TEST_CASE("no premises means an unconditional clause") {
  HornProblem p = parse_dump("clause -> a<=b\ngoal a <= b\n");
  CHECK(solve(p).holds(*p.goal));
}

TEST_CASE("dump round trip") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    HornProblem p = random_problem(rng, false);
    HornProblem q = parse_dump(dump(p));
    CHECK(q.facts.size() == p.facts.size());
    CHECK(q.clauses.size() == p.clauses.size());
    CHECK(dump(parse_dump(dump(q))) == dump(q));
    CHECK(solve(q).holds(*q.goal) == solve(p).holds(*p.goal));
  }
}

TEST_CASE("solver agrees with naive iteration") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 400; ++i) {
    bool builtin = i % 2;
    HornProblem p = random_problem(rng, builtin);
    SolveResult r = solve(p, SolveOptions{false});
    auto m = naive(p);
    // unsat: a ⊥ clause fired or the goal was derived
    CHECK(r.unsat == (!m || m->count(*p.goal) > 0));
    if (m) {
      CHECK(std::set<Atom>(r.model.begin(), r.model.end()) == *m);
      HornProblem no_goal = p;
      no_goal.goal.reset();
      CHECK(model_check(r.model, no_goal));
      CHECK(model_check(r.model, p) == !r.unsat);
    }
    CHECK(replay(r.trace, p));
    CHECK(r.stats.decrements <= r.stats.literal_occurrences);
  }
}

TEST_CASE("built-in transitivity equals explicit transitivity") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    HornProblem p = random_problem(rng, true);
    HornProblem q = expand(p);
    SolveResult a = solve(p, SolveOptions{false}), b = solve(q, SolveOptions{false});
    CHECK(a.unsat == b.unsat);
    if (!a.unsat) CHECK(std::set<Atom>(a.model.begin(), a.model.end()) == std::set<Atom>(b.model.begin(), b.model.end()));
    CHECK(a.holds(*p.goal) == b.holds(*q.goal));
  }
}

TEST_CASE("model_check rejects models that are not closed") {
  HornProblem p = parse_dump("fact a <= b\nclause a<=b -> c<=d\n");
  CHECK_FALSE(model_check({Atom{0, 1}}, p));
  CHECK(model_check(solve(p, SolveOptions{false}).model, p));
}

TEST_CASE("dump parse errors") {
  CHECK_THROWS_AS(parse_dump("fact a b\n"), ParseError);
  CHECK_THROWS_AS(parse_dump("frob a <= b\n"), ParseError);
}
