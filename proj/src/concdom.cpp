#include "loctame/concdom.hpp"

#include <algorithm>
#include <map>

namespace loctame {

std::string to_string(const NumAtom& a) {
  const char* rel = a.rel == NumAtom::Rel::Le ? " <= " : a.rel == NumAtom::Rel::Eq ? " = " : " != ";
  return to_string(a.lhs) + rel + to_string(a.rhs);
}

namespace {

// Order graph over endpoints; literal nodes are chained by value.
class EndpointOrder {
 public:
  explicit EndpointOrder(const std::vector<NumAtom>& cs) {
    for (const auto& c : cs) {
      if (c.rel == NumAtom::Rel::Ne) throw UnsupportedAtom("disequality is not supported: " + to_string(c));
      node(c.lhs);
      node(c.rhs);
    }
    for (const auto& c : cs) {
      edge(node(c.lhs), node(c.rhs));
      if (c.rel == NumAtom::Rel::Eq) edge(node(c.rhs), node(c.lhs));
    }
  }

  size_t node(const Endpoint& e) {
    auto [it, fresh] = ids_.emplace(e, ids_.size());
    if (fresh) {
      succ_.emplace_back();
      if (e.is_literal()) link_literal(e, it->second);
    }
    return it->second;
  }

  bool reaches(size_t from, size_t to) const {
    std::vector<char> seen(succ_.size(), 0);
    std::vector<size_t> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (size_t y : succ_[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return false;
  }

  bool consistent() const {
    // A larger literal may never be forced below a smaller one; by the value
    // chain it suffices to compare each literal with its predecessor.
    for (auto it = literals_.begin(); it != literals_.end(); ++it) {
      if (it == literals_.begin()) continue;
      auto prev = std::prev(it);
      if (reaches(it->second, prev->second)) return false;
    }
    return true;
  }

 private:
  void edge(size_t a, size_t b) { succ_[a].push_back(b); }

  void link_literal(const Endpoint& e, size_t id) {
    const Rational& q = e.literal();
    auto [it, fresh] = literals_.emplace(q, id);
    if (!fresh) return;
    auto next = std::next(it);
    if (it != literals_.begin()) edge(std::prev(it)->second, id);
    if (next != literals_.end()) edge(id, next->second);
  }

  std::map<Endpoint, size_t> ids_;
  std::map<Rational, size_t> literals_;
  std::vector<std::vector<size_t>> succ_;
};

}  // namespace

bool num_consistent(const std::vector<NumAtom>& constraints) { return EndpointOrder(constraints).consistent(); }

bool num_entails(const std::vector<NumAtom>& constraints, const NumAtom& query) {
  if (query.rel == NumAtom::Rel::Ne) throw UnsupportedAtom("disequality is not supported: " + to_string(query));
  EndpointOrder g(constraints);
  if (!g.consistent()) return true;
  size_t a = g.node(query.lhs), b = g.node(query.rhs);
  if (!g.reaches(a, b)) return false;
  return query.rel == NumAtom::Rel::Le || g.reaches(b, a);
}

std::optional<std::vector<NumAtom>> inclusion(const NumValue& a, const NumValue& b) {
  using K = NumValue::Kind;
  using I = IntervalConcept::Kind;
  if (a.kind == K::Empty || b.kind == K::All) return std::vector<NumAtom>{};
  if (b.kind == K::Empty || a.kind == K::All) return std::nullopt;
  const IntervalConcept& x = a.interval;
  const IntervalConcept& y = b.interval;
  switch (y.kind) {
    case I::Down:
      if (x.kind == I::Up) return std::nullopt;
      return std::vector<NumAtom>{NumAtom::le(x.hi, y.hi)};
    case I::Up:
      if (x.kind == I::Down) return std::nullopt;
      return std::vector<NumAtom>{NumAtom::le(y.lo, x.lo)};
    case I::Closed:
      if (x.kind != I::Closed) return std::nullopt;
      return std::vector<NumAtom>{NumAtom::le(y.lo, x.lo), NumAtom::le(x.hi, y.hi)};
  }
  return std::nullopt;
}

std::vector<NumAtom> well_formedness(const NumValue& v) {
  if (v.kind != NumValue::Kind::Interval || v.interval.kind != IntervalConcept::Kind::Closed) return {};
  if (v.interval.lo.is_literal() && v.interval.hi.is_literal()) return {};
  return {NumAtom::le(v.interval.lo, v.interval.hi)};
}

CombineResult combine_solve(const HornProblem& concept_problem, const std::vector<NumAtom>& num,
                            const std::vector<MixedClause>& mixed,
                            const std::function<std::string(const Atom&)>& show) {
  CombineResult res;
  if (!num_consistent(num)) {
    res.unsat = true;
    res.log.push_back("numeric constraints are inconsistent");
    return res;
  }
  HornProblem p = concept_problem;
  std::uint32_t moved = p.origin("combination");
  std::vector<const MixedClause*> open;
  for (const auto& m : mixed) open.push_back(&m);
  for (;;) {
    res.last = solve(p, SolveOptions{true});
    if (res.last.unsat) {
      res.unsat = true;
      res.problem = std::move(p);
      return res;
    }
    auto ready = std::find_if(open.begin(), open.end(), [&](const MixedClause* m) {
      if (m->never) return false;
      for (const auto& a : m->num_premises)
        if (!num_entails(num, a)) return false;
      for (const auto& a : m->premises)
        if (!res.last.holds(a)) return false;
      return true;
    });
    if (ready == open.end()) {
      res.problem = std::move(p);
      return res;
    }
    const MixedClause& m = **ready;
    std::string why;
    for (const auto& a : m.num_premises) why += (why.empty() ? "" : ", ") + to_string(a);
    res.log.push_back("move " + (show ? show(m.conclusion) : p.show(m.conclusion)) + " into the concept sort (from " + why + "; " +
                      p.origins[m.origin] + ")");
    p.add_fact(m.conclusion, moved);
    open.erase(ready);
    ++res.iterations;
  }
}

}  // namespace loctame
