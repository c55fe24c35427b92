#include "loctame/algebra.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace loctame {

int OpPattern::free_count() const {
  return static_cast<int>(std::count(fixed.begin(), fixed.end(), std::nullopt));
}

std::vector<Sort> OpPattern::free_sorts(const TermStore& store) const {
  std::vector<Sort> out;
  const auto& sorts = store.op(op).arg_sorts;
  for (size_t i = 0; i < fixed.size(); ++i)
    if (!fixed[i]) out.push_back(sorts[i]);
  return out;
}

TermId OpPattern::apply(TermStore& store, const std::vector<TermId>& vars) const {
  std::vector<TermId> args;
  args.reserve(fixed.size());
  size_t k = 0;
  for (const auto& f : fixed) args.push_back(f ? *f : vars.at(k++));
  return store.apply(op, std::move(args));
}

std::optional<std::vector<TermId>> OpPattern::match(const TermStore& store, TermId t) const {
  const TermNode& n = store.node(t);
  if (n.kind != TermKind::Apply || n.op != op) return std::nullopt;
  std::vector<TermId> vars;
  for (size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i]) {
      if (*fixed[i] != n.args[i]) return std::nullopt;
    } else {
      vars.push_back(n.args[i]);
    }
  }
  return vars;
}

namespace {

OpPattern base_pattern(OpId op, int arity) { return OpPattern{op, std::vector<std::optional<TermId>>(arity)}; }

AlgAxiom mon_axiom(const TermStore& store, OpId op) {
  AlgAxiom a;
  a.kind = AlgAxiom::Kind::Mon;
  a.mon = op;
  a.label = "Mon(" + store.op(op).name + ")";
  return a;
}

const OpPattern& pattern(AlgebraicCBox& alg, const std::string& role) {
  auto it = alg.patterns.find(role);
  if (it == alg.patterns.end()) throw Error("role '" + role + "' used before it is defined");
  return it->second;
}

void add_seed(AlgebraicCBox& alg, TermId t) { alg.store.apply_subterms(t, alg.seed_extra); }

void translate_inclusion(AlgebraicCBox& alg, const RoleInclusion& ri, const std::string& label) {
  std::optional<TermId> guard;
  if (ri.guard) {
    guard = translate_concept(alg, *ri.guard);
    add_seed(alg, *guard);
  }
  auto finish = [&](AlgAxiom a) {
    a.guard = guard;
    a.label = label;
    alg.axioms.push_back(std::move(a));
  };
  if (ri.tail.empty()) {
    AlgAxiom a;
    a.kind = AlgAxiom::Kind::K1;
    a.f = pattern(alg, ri.head);
    a.h = pattern(alg, *ri.rhs);
    finish(std::move(a));
    return;
  }
  auto composed = [&](const OpPattern& outer, std::vector<OpPattern> inner, const std::optional<OpPattern>& head) {
    AlgAxiom a;
    a.kind = head ? AlgAxiom::Kind::K2 : AlgAxiom::Kind::K3;
    a.f = outer;
    a.inner = std::move(inner);
    if (head) a.h = *head;
    return a;
  };
  std::optional<OpPattern> head;
  if (ri.rhs) head = pattern(alg, *ri.rhs);
  if (ri.tuple || ri.tail.size() == 1) {
    std::vector<OpPattern> inner;
    for (const auto& s : ri.tail) inner.push_back(pattern(alg, s));
    finish(composed(pattern(alg, ri.head), std::move(inner), head));
    return;
  }
  // r1∘r2∘…∘rk: fold through fresh binary roles u = r1∘r2, u∘r3, …
  OpPattern acc = pattern(alg, ri.head);
  std::string acc_name = ri.head;
  for (size_t i = 0; i + 1 < ri.tail.size(); ++i) {
    std::string u = "(" + acc_name + " o " + ri.tail[i] + ")";
    OpId op = alg.store.op_for_role(u, {Sort::Concept});
    if (!alg.patterns.count(u)) {
      alg.patterns[u] = base_pattern(op, 1);
      alg.axioms.push_back(mon_axiom(alg.store, op));
    }
    // the guard constrains every element after the subject, so each fold
    // step carries it
    finish(composed(acc, {pattern(alg, ri.tail[i])}, alg.patterns[u]));
    acc = alg.patterns[u];
    acc_name = u;
  }
  finish(composed(acc, {pattern(alg, ri.tail.back())}, head));
}

}  // namespace

AlgebraicCBox translate_cbox(const CBox& cbox) {
  AlgebraicCBox alg;
  for (const auto& [role, sig] : cbox.roles) {
    std::vector<Sort> args(sig.sorts.begin() + 1, sig.sorts.end());
    OpId op = alg.store.op_for_role(role, args);
    alg.patterns[role] = base_pattern(op, static_cast<int>(args.size()));
    alg.axioms.push_back(mon_axiom(alg.store, op));
  }
  for (const auto& ax : cbox.axioms) {
    if (const auto* g = std::get_if<Gci>(&ax)) {
      TermId l = translate_concept(alg, g->lhs);
      TermId r = translate_concept(alg, g->rhs);
      alg.positives.push_back({l, r});
    } else if (const auto* rr = std::get_if<RoleRestriction>(&ax)) {
      OpPattern p = pattern(alg, rr->base);
      TermId filler = translate_concept(alg, rr->filler);
      add_seed(alg, filler);
      // position counts the subject, so argument index position-2 among the
      // base role's remaining variables
      int want = rr->position - 2, seen = 0;
      for (auto& f : p.fixed) {
        if (f) continue;
        if (seen++ == want) {
          f = filler;
          break;
        }
      }
      alg.patterns[rr->role] = p;
    } else {
      translate_inclusion(alg, std::get<RoleInclusion>(ax), render(ax));
    }
  }
  std::sort(alg.seed_extra.begin(), alg.seed_extra.end());
  alg.seed_extra.erase(std::unique(alg.seed_extra.begin(), alg.seed_extra.end()), alg.seed_extra.end());
  return alg;
}

TermId translate_concept(AlgebraicCBox& alg, const Concept& c) {
  TermStore& st = alg.store;
  switch (c.kind) {
    case Concept::Kind::Bottom: return st.zero(c.sort);
    case Concept::Kind::Top: return st.one(c.sort);
    case Concept::Kind::Name: return st.constant(c.name, Sort::Concept);
    case Concept::Kind::Interval: return st.interval(c.interval);
    case Concept::Kind::Conj: return st.meet({translate_concept(alg, c.args[0]), translate_concept(alg, c.args[1])});
    case Concept::Kind::Exists: {
      std::vector<TermId> args;
      for (const auto& a : c.args) args.push_back(translate_concept(alg, a));
      if (!alg.patterns.count(c.name)) {
        std::vector<Sort> sorts;
        for (TermId a : args) sorts.push_back(st.node(a).sort);
        OpId op = st.op_for_role(c.name, sorts);
        alg.patterns[c.name] = base_pattern(op, static_cast<int>(sorts.size()));
        alg.axioms.push_back(mon_axiom(st, op));
      }
      const OpPattern& p = alg.patterns[c.name];
      if (static_cast<size_t>(p.free_count()) != args.size())
        throw Error("arity mismatch for role '" + c.name + "'");
      return p.apply(st, args);
    }
  }
  return st.one();
}

Translation translate(const CBox& cbox, const Concept& lhs, const Concept& rhs) {
  Translation t;
  t.alg = translate_cbox(cbox);
  t.goal.positives = t.alg.positives;
  t.goal.negative = {translate_concept(t.alg, lhs), translate_concept(t.alg, rhs)};
  return t;
}

std::vector<TermId> psi_seed(const AlgebraicCBox& alg, const std::vector<GroundAtom>& atoms) {
  std::vector<TermId> seed = alg.seed_extra;
  for (const auto& a : atoms) {
    alg.store.apply_subterms(a.lhs, seed);
    alg.store.apply_subterms(a.rhs, seed);
  }
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  return seed;
}

std::vector<TermId> psi_closure(TermStore& store, const std::vector<AlgAxiom>& axioms,
                                const std::vector<TermId>& seed) {
  std::unordered_set<TermId> in;
  std::unordered_map<OpId, std::vector<TermId>> by_op;
  std::vector<TermId> work;
  auto add = [&](TermId t) {
    if (!store.is_apply(t) || !in.insert(t).second) return;
    by_op[store.node(t).op].push_back(t);
    work.push_back(t);
  };
  for (TermId t : seed) add(t);

  // Axioms indexed by the operators that trigger them.
  std::unordered_map<OpId, std::vector<size_t>> triggers;
  for (size_t i = 0; i < axioms.size(); ++i) {
    const AlgAxiom& a = axioms[i];
    if (a.kind == AlgAxiom::Kind::K1) triggers[a.f.op].push_back(i);
    if (a.kind == AlgAxiom::Kind::K2)
      for (const auto& g : a.inner) triggers[g.op].push_back(i);
  }
  for (auto& [op, v] : triggers) v.erase(std::unique(v.begin(), v.end()), v.end());

  while (!work.empty()) {
    TermId t = work.back();
    work.pop_back();
    auto trig = triggers.find(store.node(t).op);
    if (trig == triggers.end()) continue;
    for (size_t ai : trig->second) {
      const AlgAxiom& a = axioms[ai];
      if (a.kind == AlgAxiom::Kind::K1) {
        if (auto vars = a.f.match(store, t)) add(a.h.apply(store, *vars));
        continue;
      }
      size_t n = a.inner.size();
      for (size_t pos = 0; pos < n; ++pos) {
        auto bound = a.inner[pos].match(store, t);
        if (!bound) continue;
        // candidate variable tuples for every inner position
        std::vector<std::vector<std::vector<TermId>>> cands(n);
        bool empty = false;
        for (size_t j = 0; j < n && !empty; ++j) {
          if (j == pos) {
            cands[j].push_back(*bound);
            continue;
          }
          for (TermId u : by_op[a.inner[j].op])
            if (auto v = a.inner[j].match(store, u)) cands[j].push_back(std::move(*v));
          empty = cands[j].empty();
        }
        if (empty) continue;
        std::vector<size_t> idx(n, 0);
        for (;;) {
          std::vector<TermId> vars;
          for (size_t j = 0; j < n; ++j) vars.insert(vars.end(), cands[j][idx[j]].begin(), cands[j][idx[j]].end());
          add(a.h.apply(store, vars));
          size_t j = 0;
          while (j < n && ++idx[j] == cands[j].size()) idx[j++] = 0;
          if (j == n) break;
        }
      }
    }
  }
  std::vector<TermId> out(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace loctame
