#include "loctame/reduce.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace loctame {

namespace {

struct InstanceKey {
  std::vector<GroundAtom> premises;
  GroundAtom conclusion;
  bool operator==(const InstanceKey&) const = default;
};

struct InstanceKeyHash {
  size_t operator()(const InstanceKey& k) const {
    size_t h = (static_cast<size_t>(k.conclusion.lhs) << 32) ^ k.conclusion.rhs;
    for (const auto& a : k.premises) h = h * 1000003u ^ ((static_cast<size_t>(a.lhs) << 32) ^ a.rhs);
    return h;
  }
};

class Instantiator {
 public:
  Instantiator(TermStore& store, const std::vector<AlgAxiom>& axioms, const std::vector<TermId>& psi)
      : store_(store), axioms_(axioms), psi_(psi) {
    for (TermId t : psi) by_op_[store.node(t).op].push_back(t);
  }

  void strict() {
    for (TermId t : psi_) {
      const TermNode& n = store_.node(t);
      for (TermId a : n.args) emit({{a, store_.zero(store_.node(a).sort)}}, {t, store_.zero()}, kStrictAxiom);
    }
  }

  std::vector<TermClause> run() {
    for (size_t i = 0; i < axioms_.size(); ++i) {
      const AlgAxiom& a = axioms_[i];
      auto idx = static_cast<std::uint32_t>(i);
      switch (a.kind) {
        case AlgAxiom::Kind::Mon: mon(a, idx); break;
        case AlgAxiom::Kind::K1: k1(a, idx); break;
        case AlgAxiom::Kind::K2: k2(a, idx); break;
        case AlgAxiom::Kind::K3: k3(a, idx); break;
      }
    }
    return std::move(out_);
  }

 private:
  const std::vector<TermId>& terms(OpId op) {
    static const std::vector<TermId> none;
    auto it = by_op_.find(op);
    return it == by_op_.end() ? none : it->second;
  }

  void guard_atoms(const AlgAxiom& a, const std::vector<TermId>& vars, std::vector<GroundAtom>& prem) {
    if (!a.guard) return;
    Sort gs = store_.node(*a.guard).sort;
    for (TermId v : vars)
      if (store_.node(v).sort == gs) prem.push_back({v, *a.guard});
  }

  void emit(std::vector<GroundAtom> prem, GroundAtom concl, std::uint32_t axiom) {
    std::sort(prem.begin(), prem.end());
    prem.erase(std::unique(prem.begin(), prem.end()), prem.end());
    // premises that coincide with the conclusion make the instance trivial
    if (std::find(prem.begin(), prem.end(), concl) != prem.end()) return;
    if (!seen_.insert(InstanceKey{prem, concl}).second) return;
    out_.push_back(TermClause{std::move(prem), concl, axiom});
  }

  void mon(const AlgAxiom& a, std::uint32_t idx) {
    const auto& ts = terms(a.mon);
    for (TermId s : ts)
      for (TermId t : ts) {
        if (s == t) continue;
        const auto& x = store_.node(s).args;
        const auto& y = store_.node(t).args;
        std::vector<GroundAtom> prem;
        for (size_t i = 0; i < x.size(); ++i)
          if (x[i] != y[i]) prem.push_back({x[i], y[i]});
        emit(std::move(prem), {s, t}, idx);
      }
  }

  // g(x̄) ≤ h(x̄)
  void k1(const AlgAxiom& a, std::uint32_t idx) {
    for (TermId t : terms(a.f.op)) {
      auto vars = a.f.match(store_, t);
      if (!vars) continue;
      std::vector<GroundAtom> prem;
      guard_atoms(a, *vars, prem);
      emit(std::move(prem), {t, a.h.apply(store_, *vars)}, idx);
    }
  }

  // ⋀ yᵢ ≤ gᵢ(x̄ᵢ) → f(ȳ) ≤ h(x̄₁ … x̄ₙ)
  void k2(const AlgAxiom& a, std::uint32_t idx) {
    size_t n = a.inner.size();
    std::vector<std::vector<std::vector<TermId>>> cands(n);
    std::vector<std::vector<TermId>> inner_terms(n);
    for (size_t j = 0; j < n; ++j) {
      for (TermId t : terms(a.inner[j].op))
        if (auto v = a.inner[j].match(store_, t)) {
          cands[j].push_back(std::move(*v));
          inner_terms[j].push_back(t);
        }
      if (cands[j].empty()) return;
    }
    for (TermId ft : terms(a.f.op)) {
      auto ys = a.f.match(store_, ft);
      if (!ys) continue;
      if (ys->size() != n) throw Error("composition arity mismatch in " + a.label);
      std::vector<size_t> pick(n, 0);
      for (;;) {
        std::vector<GroundAtom> prem;
        std::vector<TermId> xs;
        for (size_t j = 0; j < n; ++j) {
          prem.push_back({(*ys)[j], inner_terms[j][pick[j]]});
          xs.insert(xs.end(), cands[j][pick[j]].begin(), cands[j][pick[j]].end());
        }
        std::vector<TermId> vars = *ys;
        vars.insert(vars.end(), xs.begin(), xs.end());
        guard_atoms(a, vars, prem);
        emit(std::move(prem), {ft, a.h.apply(store_, xs)}, idx);
        size_t j = 0;
        while (j < n && ++pick[j] == cands[j].size()) pick[j++] = 0;
        if (j == n) break;
      }
    }
  }

  // ⋀ zᵢ ≤ gᵢ(y) → f(z̄) ≤ y, with one y shared by all gᵢ
  void k3(const AlgAxiom& a, std::uint32_t idx) {
    size_t n = a.inner.size();
    // y ↦ gᵢ(y) for every inner position
    std::vector<std::map<TermId, TermId>> at(n);
    for (size_t j = 0; j < n; ++j) {
      if (a.inner[j].free_count() != 1) throw Error("identity inclusion needs unary inner roles: " + a.label);
      for (TermId t : terms(a.inner[j].op))
        if (auto v = a.inner[j].match(store_, t)) at[j].emplace((*v)[0], t);
    }
    if (n == 0) return;
    std::vector<TermId> ys;
    for (const auto& [y, t] : at[0]) {
      bool all = true;
      for (size_t j = 1; j < n && all; ++j) all = at[j].count(y) > 0;
      if (all) ys.push_back(y);
    }
    for (TermId ft : terms(a.f.op)) {
      auto zs = a.f.match(store_, ft);
      if (!zs) continue;
      if (zs->size() != n) throw Error("identity inclusion arity mismatch in " + a.label);
      for (TermId y : ys) {
        std::vector<GroundAtom> prem;
        for (size_t j = 0; j < n; ++j) prem.push_back({(*zs)[j], at[j].at(y)});
        std::vector<TermId> vars = *zs;
        vars.push_back(y);
        guard_atoms(a, vars, prem);
        emit(std::move(prem), {ft, y}, idx);
      }
    }
  }

  TermStore& store_;
  const std::vector<AlgAxiom>& axioms_;
  const std::vector<TermId>& psi_;
  std::unordered_map<OpId, std::vector<TermId>> by_op_;
  std::unordered_set<InstanceKey, InstanceKeyHash> seen_;
  std::vector<TermClause> out_;
};

}  // namespace

std::vector<TermClause> instantiate(TermStore& store, const std::vector<AlgAxiom>& axioms,
                                    const std::vector<TermId>& psi, bool strict) {
  Instantiator inst(store, axioms, psi);
  if (strict) inst.strict();
  return inst.run();
}

std::string axiom_label(const std::vector<AlgAxiom>& axioms, const TermClause& c) {
  return c.axiom == kStrictAxiom ? "strictness" : axioms[c.axiom].label;
}

bool mentions_bottom(const TermStore& store, const std::vector<GroundAtom>& atoms, const std::vector<TermId>& psi) {
  auto zero = [&](TermId t) { return store.node(t).kind == TermKind::Zero; };
  for (const auto& a : atoms)
    if (zero(a.lhs) || zero(a.rhs)) return true;
  for (TermId t : psi)
    for (TermId a : store.node(t).args)
      if (zero(a)) return true;
  return false;
}

size_t mon_instance_count(const TermStore& store, const std::vector<TermId>& psi) {
  std::unordered_map<OpId, size_t> k;
  for (TermId t : psi) ++k[store.node(t).op];
  size_t n = 0;
  for (const auto& [op, c] : k) n += c * (c - 1);
  return n;
}

Purified flatten_purify(const TermStore& store, const std::vector<AlgAxiom>& axioms,
                        const std::vector<TermClause>& instances, const std::vector<GroundAtom>& facts,
                        const std::vector<GroundAtom>& goals) {
  Purified pur;
  HornProblem& p = pur.base;

  std::vector<TermId> todo{store.zero(), store.one()};
  auto note = [&](const GroundAtom& a) {
    todo.push_back(a.lhs);
    todo.push_back(a.rhs);
  };
  for (const auto& f : facts) note(f);
  for (const auto& c : instances) {
    for (const auto& a : c.premises) note(a);
    note(c.conclusion);
  }
  for (const auto& g : goals) note(g);
  std::vector<TermId> terms;
  std::unordered_set<TermId> seen;
  while (!todo.empty()) {
    TermId t = todo.back();
    todo.pop_back();
    if (!seen.insert(t).second) continue;
    terms.push_back(t);
    const TermNode& n = store.node(t);
    if (n.kind == TermKind::Meet) todo.insert(todo.end(), n.args.begin(), n.args.end());
  }
  std::sort(terms.begin(), terms.end());

  size_t proxies = 0, intervals = 0;
  for (TermId t : terms) {
    const TermNode& n = store.node(t);
    std::string name;
    switch (n.kind) {
      case TermKind::Zero: name = n.sort == Sort::Concept ? "0" : "$bot_num"; break;
      case TermKind::One: name = n.sort == Sort::Concept ? "1" : "$top_num"; break;
      case TermKind::Const: name = n.name; break;
      case TermKind::Interval: name = "$i" + std::to_string(intervals++); break;
      default: name = "$" + std::to_string(proxies++); break;
    }
    ConstId c = p.add_const(name, n.sort);
    pur.term_of.push_back(t);
    pur.const_of.emplace(t, c);
  }
  pur.zero = pur.const_of.at(store.zero());
  pur.one = pur.const_of.at(store.one());
  for (TermId t : terms) {
    const TermNode& n = store.node(t);
    if (n.kind != TermKind::Meet) continue;
    MeetDef m{pur.const_of.at(t), {}};
    for (TermId a : n.args) m.operands.push_back(pur.const_of.at(a));
    pur.meets.push_back(std::move(m));
  }

  auto atom = [&](const GroundAtom& a) { return pur.atom(a); };
  std::uint32_t gci = p.origin("GCI");
  for (const auto& f : facts) p.add_fact(atom(f), gci);
  for (const auto& c : instances) {
    HornClause h;
    for (const auto& a : c.premises) h.premises.push_back(atom(a));
    h.conclusion = atom(c.conclusion);
    h.origin = p.origin(axiom_label(axioms, c));
    p.clauses.push_back(std::move(h));
  }
  return pur;
}

void SlSink::transitivity(const std::vector<ConstId>& cs, std::uint32_t origin) {
  for (ConstId x : cs)
    for (ConstId y : cs) {
      if (y == x) continue;
      for (ConstId z : cs) {
        if (z == x || z == y) continue;
        clause(HornClause{{Atom{x, y}, Atom{y, z}}, Atom{x, z}, origin});
      }
    }
}

void sl_emit(const Purified& pur, Mode mode, HornProblem& labels, SlSink& sink) {
  const HornProblem& p = pur.base;
  std::vector<ConstId> cs;
  for (ConstId c = 0; c < p.size(); ++c)
    if (p.sorts[c] == Sort::Concept) cs.push_back(c);
  std::uint32_t refl = labels.origin("reflexivity");
  std::uint32_t bounds = labels.origin("bounds");
  std::uint32_t meet_lb = labels.origin("meet lower bound");
  std::uint32_t meet_glb = labels.origin("meet greatest lower bound");
  std::uint32_t trans = labels.origin("transitivity");
  for (ConstId c : cs) {
    sink.fact(Atom{c, c}, refl);
    if (c != pur.zero) sink.fact(Atom{pur.zero, c}, bounds);
    if (c != pur.one) sink.fact(Atom{c, pur.one}, bounds);
  }
  for (const auto& m : pur.meets) {
    if (p.sorts[m.proxy] != Sort::Concept) continue;
    for (ConstId a : m.operands) sink.fact(Atom{m.proxy, a}, meet_lb);
    for (ConstId z : cs) {
      if (z == m.proxy) continue;
      HornClause h;
      for (ConstId a : m.operands) h.premises.push_back(Atom{z, a});
      h.conclusion = Atom{z, m.proxy};
      h.origin = meet_glb;
      sink.clause(std::move(h));
    }
  }
  if (mode == Mode::Instantiate) sink.transitivity(cs, trans);
}

namespace {

class ProblemSink : public SlSink {
 public:
  explicit ProblemSink(HornProblem& p) : p_(p) {}
  void fact(const Atom& a, std::uint32_t origin) override { p_.add_fact(a, origin); }
  void clause(HornClause c) override { p_.clauses.push_back(std::move(c)); }

 private:
  HornProblem& p_;
};

class CountSink : public SlSink {
 public:
  void fact(const Atom&, std::uint32_t) override {}
  void clause(HornClause) override { ++clauses; }
  void transitivity(const std::vector<ConstId>& cs, std::uint32_t) override {
    size_t n = cs.size();
    if (n >= 3) clauses += n * (n - 1) * (n - 2);
  }
  size_t clauses = 0;
};

}  // namespace

HornProblem sl_instantiate(const Purified& pur, Mode mode) {
  HornProblem p = pur.base;
  p.builtin_transitivity = mode == Mode::Chase;
  ProblemSink sink(p);
  sl_emit(pur, mode, p, sink);
  return p;
}

size_t sl_clause_count(const Purified& pur, Mode mode) {
  HornProblem labels;
  CountSink sink;
  sl_emit(pur, mode, labels, sink);
  return pur.base.clauses.size() + sink.clauses;
}

}  // namespace loctame
