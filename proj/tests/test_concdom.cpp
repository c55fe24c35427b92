#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "loctame/concdom.hpp"
#include "loctame/pipeline.hpp"

using namespace loctame;

namespace {

Endpoint lit(long long n, long long d = 1) { return Endpoint{Rational(n, d)}; }
Endpoint par(const std::string& s) { return Endpoint{s}; }

using Assignment = std::map<std::string, Rational>;

Rational value(const Endpoint& e, const Assignment& a) { return e.is_literal() ? e.literal() : a.at(e.param()); }

bool holds(const NumAtom& x, const Assignment& a) {
  Rational l = value(x.lhs, a), r = value(x.rhs, a);
  return x.rel == NumAtom::Rel::Le ? l <= r : l == r;
}

// Exhaustive search over a grid of quarter points in [-1, 4].
bool grid_entails(const std::vector<NumAtom>& cs, const NumAtom& q, const std::vector<std::string>& params) {
  Assignment a;
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == params.size()) {
      for (const auto& c : cs)
        if (!holds(c, a)) return true;
      return holds(q, a);
    }
    for (int k = -4; k <= 16; ++k) {
      a[params[i]] = Rational(k, 4);
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

NumValue interval(IntervalConcept i) { return NumValue{NumValue::Kind::Interval, std::move(i)}; }

bool member(const NumValue& v, const Rational& x) {
  if (v.kind != NumValue::Kind::Interval) return v.kind == NumValue::Kind::All;
  const auto& i = v.interval;
  bool lo = i.kind == IntervalConcept::Kind::Down || i.lo.literal() <= x;
  bool hi = i.kind == IntervalConcept::Kind::Up || x <= i.hi.literal();
  return lo && hi;
}

}  // namespace

TEST_CASE("entailment over the rationals") {
  std::vector<NumAtom> cs{NumAtom::le(par("n"), par("n1")), NumAtom::le(par("n1"), lit(3))};
  CHECK(num_entails(cs, NumAtom::le(par("n"), lit(3))));
  CHECK(num_entails(cs, NumAtom::le(par("n"), lit(7, 2))));
  CHECK_FALSE(num_entails(cs, NumAtom::le(par("n"), lit(2))));
  CHECK_FALSE(num_entails(cs, NumAtom::le(par("n1"), par("n"))));
  CHECK(num_entails({NumAtom::le(lit(1), lit(0))}, NumAtom::le(par("x"), lit(-5))));
  CHECK_FALSE(num_consistent({NumAtom::le(par("x"), lit(0)), NumAtom::le(lit(1), par("x"))}));
  CHECK_THROWS_AS(num_entails(cs, NumAtom{NumAtom::Rel::Ne, par("n"), lit(1)}), UnsupportedAtom);
}

TEST_CASE("entailment agrees with grid search") {
  std::mt19937_64 rng(51);
  const std::vector<std::string> params{"x", "y", "z"};
  auto endpoint = [&]() -> Endpoint {
    if (rng() % 3 == 0) return lit(static_cast<long long>(rng() % 4));
    return par(params[rng() % params.size()]);
  };
  auto atom = [&] {
    NumAtom a = NumAtom::le(endpoint(), endpoint());
    if (rng() % 5 == 0) a.rel = NumAtom::Rel::Eq;
    return a;
  };
  for (int i = 0; i < 300; ++i) {
    std::vector<NumAtom> cs;
    for (int k = static_cast<int>(rng() % 5); k >= 0; --k) cs.push_back(atom());
    NumAtom q = atom();
    CAPTURE(i);
    CHECK(num_entails(cs, q) == grid_entails(cs, q, params));
  }
}

TEST_CASE("interval inclusion agrees with point sampling") {
  std::mt19937_64 rng(52);
  auto make = [&]() -> NumValue {
    long long a = static_cast<long long>(rng() % 5), b = static_cast<long long>(rng() % 5);
    switch (rng() % 5) {
      case 0: return interval(IntervalConcept::up(lit(a)));
      case 1: return interval(IntervalConcept::down(lit(a)));
      case 2: return NumValue{NumValue::Kind::All, {}};
      default: return interval(IntervalConcept::closed(lit(std::min(a, b)), lit(std::max(a, b))));
    }
  };
  for (int i = 0; i < 300; ++i) {
    NumValue a = make(), b = make();
    bool sampled = true;
    for (int k = -8; k <= 48 && sampled; ++k) {
      Rational x(k, 4);
      if (member(a, x) && !member(b, x)) sampled = false;
    }
    auto c = inclusion(a, b);
    bool decided = c.has_value();
    if (decided)
      for (const auto& atom : *c) decided = decided && holds(atom, {});
    CHECK(decided == sampled);
  }
}

TEST_CASE("price and weight example moves two atoms into the concept sort") {
  CBox b = load("price.cbox");
  QueryResult r = Reasoner(b).check(b.queries[0].lhs, b.queries[0].rhs);
  CHECK(r.holds);
  REQUIRE(r.sat.combined.has_value());
  const auto& log = r.sat.log();
  REQUIRE(log.size() == 2);
  CHECK(log[0].find("f_price(num down n) <= f_price(num down n1)") != std::string::npos);
  CHECK(log[0].find("n <= n1") != std::string::npos);
  CHECK(log[1].find("f_weight(num up m) <= f_weight(num up m1)") != std::string::npos);
  CHECK(log[1].find("m1 <= m") != std::string::npos);
}

TEST_CASE("numeric queries") {
  CBox b = parse_cbox(
      "decl role p : (concept, num)\n"
      "A sub exists p . num [1, 2]\n"
      "? num [1, 2] sub num up 0\n"
      "? num up 0 sub num [1, 2]\n"
      "? A sub exists p . num up 1\n"
      "? A sub exists p . num up 3/2\n");
  Reasoner rs(b);
  std::vector<bool> want{true, false, true, false};
  for (size_t i = 0; i < want.size(); ++i) CHECK(rs.check(b.queries[i].lhs, b.queries[i].rhs).holds == want[i]);
}
