#include "loctame/interpolate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "loctame/algebra.hpp"
#include "loctame/hornsat.hpp"
#include "loctame/pipeline.hpp"
#include "loctame/reduce.hpp"

namespace loctame {

namespace {

constexpr int kMaxRounds = 6;
constexpr size_t kMaxWitnesses = 4;

// Symbol colors of a term, as bits.
constexpr unsigned kALocal = 1, kBLocal = 2, kFree = 4;

struct Vocab {
  std::set<TermId> a_consts, b_consts;
  TermId theory_limit = 0;  // constants below this id come from the axioms
  std::vector<char> op_a, op_b, op_fold;

  unsigned bits(const TermStore& st, TermId t) const {
    std::vector<TermId> cs;
    std::vector<OpId> ops;
    st.symbols(t, cs, ops);
    unsigned b = 0;
    for (TermId c : cs) {
      if (c < theory_limit) continue;
      bool in_a = a_consts.count(c) > 0, in_b = b_consts.count(c) > 0;
      if (in_a && !in_b) b |= kALocal;
      if (in_b && !in_a) b |= kBLocal;
    }
    for (OpId f : ops) {
      if (op_fold[f] || (!op_a[f] && !op_b[f])) b |= kFree;
      else if (!op_b[f]) b |= kALocal;
      else if (!op_a[f]) b |= kBLocal;
    }
    return b;
  }
  bool shared(const TermStore& st, TermId t) const { return bits(st, t) == 0; }
};

std::vector<OpId> axiom_ops(const AlgAxiom& ax) {
  if (ax.kind == AlgAxiom::Kind::Mon) return {ax.mon};
  std::vector<OpId> out{ax.f.op};
  for (const auto& p : ax.inner) out.push_back(p.op);
  if (ax.kind != AlgAxiom::Kind::K3) out.push_back(ax.h.op);
  return out;
}

// f is on side X if some g with f ∼ g occurs in X.
Vocab vocabulary(const AlgebraicCBox& alg, const std::vector<GroundAtom>& a, const std::vector<GroundAtom>& b,
                 TermId theory_limit) {
  const TermStore& st = alg.store;
  Vocab v;
  v.theory_limit = theory_limit;
  size_t n = st.op_count();
  std::vector<char> in_a(n, 0), in_b(n, 0);
  auto collect = [&](const std::vector<GroundAtom>& atoms, std::set<TermId>& consts, std::vector<char>& ops) {
    for (const auto& at : atoms)
      for (TermId t : {at.lhs, at.rhs}) {
        std::vector<TermId> cs;
        std::vector<OpId> os;
        st.symbols(t, cs, os);
        consts.insert(cs.begin(), cs.end());
        for (OpId f : os) ops[f] = 1;
      }
  };
  collect(a, v.a_consts, in_a);
  collect(b, v.b_consts, in_b);
  v.op_a = in_a;
  v.op_b = in_b;
  for (const auto& ax : alg.axioms) {
    auto ops = axiom_ops(ax);
    bool a_here = std::any_of(ops.begin(), ops.end(), [&](OpId f) { return in_a[f]; });
    bool b_here = std::any_of(ops.begin(), ops.end(), [&](OpId f) { return in_b[f]; });
    for (OpId f : ops) {
      if (a_here) v.op_a[f] = 1;
      if (b_here) v.op_b[f] = 1;
    }
  }
  v.op_fold.assign(n, 0);
  for (OpId f = 0; f < n; ++f) v.op_fold[f] = st.op(f).role.starts_with("(");
  return v;
}

unsigned instance_bits(const TermStore& st, const Vocab& v, const TermClause& c) {
  unsigned b = 0;
  auto add = [&](const GroundAtom& a) { b |= v.bits(st, a.lhs) | v.bits(st, a.rhs); };
  for (const auto& p : c.premises) add(p);
  add(c.conclusion);
  return b;
}

// A purified, saturated side of the problem.
struct Part {
  Purified pur;
  HornProblem problem;
  SolveResult result;
  std::uint32_t interp_origin = 0;
  size_t first_interp_fact = 0;

  bool holds(const GroundAtom& a) const {
    if (a.lhs == a.rhs) return true;
    auto l = pur.const_of.find(a.lhs), r = pur.const_of.find(a.rhs);
    if (l == pur.const_of.end() || r == pur.const_of.end()) return false;
    return result.holds({l->second, r->second});
  }
};

Part build(const TermStore& st, const std::vector<AlgAxiom>& axioms, const std::vector<TermClause>& inst,
           const std::vector<GroundAtom>& facts, const std::vector<GroundAtom>& interp,
           const std::optional<GroundAtom>& goal) {
  Part p;
  std::vector<GroundAtom> extra = interp;
  if (goal) extra.push_back(*goal);
  p.pur = flatten_purify(st, axioms, inst, facts, extra);
  p.problem = sl_instantiate(p.pur, Mode::Chase);
  p.interp_origin = p.problem.origin("interpolant");
  p.first_interp_fact = p.problem.facts.size();
  for (const auto& a : interp) p.problem.add_fact(p.pur.atom(a), p.interp_origin);
  if (goal) p.problem.goal = p.pur.atom(*goal);
  p.result = solve(p.problem, SolveOptions{goal.has_value()});
  return p;
}

bool goal_reached(const Part& p) { return p.problem.goal && p.result.holds(*p.problem.goal); }

TermId substitute(TermStore& st, TermId t, TermId from, TermId to) {
  if (t == from) return to;
  const TermNode n = st.node(t);
  if (n.kind != TermKind::Apply && n.kind != TermKind::Meet) return t;
  std::vector<TermId> args;
  bool changed = false;
  for (TermId a : n.args) {
    args.push_back(substitute(st, a, from, to));
    changed |= args.back() != a;
  }
  if (!changed) return t;
  return n.kind == TermKind::Apply ? st.apply(n.op, std::move(args)) : st.meet(std::move(args));
}

std::string show_atom(const TermStore& st, const GroundAtom& a) { return st.show(a.lhs) + " <= " + st.show(a.rhs); }

std::string show_instance(const TermStore& st, const std::vector<AlgAxiom>& axioms, const TermClause& c) {
  std::string s;
  for (size_t i = 0; i < c.premises.size(); ++i) s += (i ? ", " : "") + show_atom(st, c.premises[i]);
  return (s.empty() ? "" : s + " -> ") + show_atom(st, c.conclusion) + "  [" + axiom_label(axioms, c) + "]";
}

Concept back(const TermStore& st, TermId t) { return st.to_concept(t); }

void check_input(const CBox& problem) {
  for (const auto& ax : problem.axioms)
    if (std::holds_alternative<Gci>(ax))
      throw UnsupportedConstruct("interpolation problems take GCIs as A: or B: literals only");
  if (!problem.queries.empty()) throw UnsupportedConstruct("interpolation problems have no queries");
  for (const auto& [r, sig] : problem.roles)
    for (Sort s : sig.sorts)
      if (s == Sort::Num) throw UnsupportedConstruct("interpolation modulo the num sort is not supported");
  if (problem.split.empty()) throw Error("no A: or B: literals");
}

}  // namespace

std::string InterpolationResult::show() const {
  if (atoms.empty()) return "top\n";
  std::string out;
  for (const auto& [l, r] : atoms) out += render(l) + " sub " + render(r) + "\n";
  return out;
}

InterpolationResult interpolate(const CBox& problem) {
  check_input(problem);
  CBox theory = problem;
  theory.split.clear();
  AlgebraicCBox alg = translate_cbox(theory);
  TermStore& st = alg.store;
  TermId theory_limit = static_cast<TermId>(st.size());

  std::vector<GroundAtom> a_facts, b_facts;
  std::optional<GroundAtom> neg;
  for (const auto& l : problem.split) {
    GroundAtom g{translate_concept(alg, l.lhs), translate_concept(alg, l.rhs)};
    if (st.node(g.lhs).sort == Sort::Num || st.node(g.rhs).sort == Sort::Num)
      throw UnsupportedConstruct("interpolation modulo the num sort is not supported");
    if (!l.negated) {
      (l.side == Side::A ? a_facts : b_facts).push_back(g);
      continue;
    }
    if (l.side == Side::A) throw Error("the negated literal must be on the B side");
    if (neg) throw Error("at most one negated literal");
    neg = g;
  }
  // positive atoms alone hold in the one-element algebra
  if (!neg) throw NotUnsat("A and B have no negated literal and are satisfiable");

  std::vector<GroundAtom> b_lits = b_facts;
  b_lits.push_back(*neg);
  Vocab voc = vocabulary(alg, a_facts, b_lits, theory_limit);

  InterpolationResult res;
  std::vector<TermId> extra;  // operator terms at separating terms
  std::vector<GroundAtom> seeds = a_facts;
  seeds.insert(seeds.end(), b_lits.begin(), b_lits.end());

  std::vector<GroundAtom> found;
  for (int round = 1;; ++round) {
    if (round > kMaxRounds) throw Error("interpolation: no separated refutation found");
    res.rounds = round;
    std::vector<TermId> seed = psi_seed(alg, seeds);
    seed.insert(seed.end(), extra.begin(), extra.end());
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    std::vector<TermId> psi = psi_closure(st, alg.axioms, seed);
    std::vector<TermClause> inst = instantiate(st, alg.axioms, psi, mentions_bottom(st, seeds, psi));

    std::vector<TermClause> inst_a, inst_b;
    std::vector<const TermClause*> mixed;
    for (const auto& c : inst) {
      unsigned b = instance_bits(st, voc, c);
      if ((b & kALocal) && (b & kBLocal)) {
        mixed.push_back(&c);
        continue;
      }
      if (!(b & kBLocal)) inst_a.push_back(c);
      if (!(b & kALocal)) inst_b.push_back(c);
    }

    Part a = build(st, alg.axioms, inst_a, a_facts, {}, std::nullopt);
    std::vector<GroundAtom> i_full;
    for (const Atom& at : a.result.model) {
      TermId l = a.pur.term_of[at.lhs], r = a.pur.term_of[at.rhs];
      if (l == r || r == st.one() || l == st.zero()) continue;
      if (voc.shared(st, l) && voc.shared(st, r)) i_full.push_back({l, r});
    }
    Part b = build(st, alg.axioms, inst_b, b_facts, i_full, neg);
    if (goal_reached(b)) {
      std::set<GroundAtom> used;
      for (size_t s : b.result.trace.support(*b.problem.goal)) {
        const ProofStep& step = b.result.trace.steps[s];
        if (step.rule == ProofStep::Rule::Fact && b.problem.fact_origin(step.clause) == b.interp_origin)
          used.insert({b.pur.term_of[step.atom.lhs], b.pur.term_of[step.atom.rhs]});
      }
      // drop conjuncts the refutation can do without
      HornProblem p = b.problem;
      std::vector<Atom> kept;
      for (const auto& g : used) kept.push_back(b.pur.atom(g));
      for (size_t i = 0; i < kept.size();) {
        HornProblem q = p;
        q.facts.resize(b.first_interp_fact);
        q.fact_origins.resize(std::min(q.fact_origins.size(), b.first_interp_fact));
        for (size_t j = 0; j < kept.size(); ++j)
          if (j != i) q.add_fact(kept[j], b.interp_origin);
        SolveResult r = solve(q);
        if (r.holds(*q.goal)) kept.erase(kept.begin() + static_cast<long>(i));
        else ++i;
      }
      for (const Atom& at : kept) found.push_back({b.pur.term_of[at.lhs], b.pur.term_of[at.rhs]});
      break;
    }

    // Separate: every instance firing in the joint least model whose
    // premises its own side cannot derive is re-instantiated at shared
    // terms between the two sides of the crossing premise.
    std::vector<GroundAtom> all_facts = a_facts;
    all_facts.insert(all_facts.end(), b_facts.begin(), b_facts.end());
    Part full = build(st, alg.axioms, inst, all_facts, {}, std::nullopt);
    if (round == 1) {
      GroundAtom g = *neg;
      if (!full.holds(g)) throw NotUnsat("A and B are jointly satisfiable");
    }
    std::vector<ConstId> shared_consts;
    for (ConstId c = 0; c < full.pur.term_of.size(); ++c)
      if (voc.shared(st, full.pur.term_of[c])) shared_consts.push_back(c);

    size_t before = extra.size();
    std::set<TermId> known(psi.begin(), psi.end());
    known.insert(extra.begin(), extra.end());
    for (const auto& c : inst) {
      unsigned bits = instance_bits(st, voc, c);
      bool is_mixed = (bits & kALocal) && (bits & kBLocal);
      const Part* own = (bits & kBLocal) ? &b : &a;
      if (!std::all_of(c.premises.begin(), c.premises.end(), [&](const GroundAtom& p) { return full.holds(p); }))
        continue;
      if (!is_mixed && std::all_of(c.premises.begin(), c.premises.end(),
                                   [&](const GroundAtom& p) { return own->holds(p); }))
        continue;
      std::vector<TermId> applies;
      for (const auto& at : c.premises) {
        st.apply_subterms(at.lhs, applies);
        st.apply_subterms(at.rhs, applies);
      }
      st.apply_subterms(c.conclusion.lhs, applies);
      st.apply_subterms(c.conclusion.rhs, applies);
      for (const auto& p : c.premises) {
        if (a.holds(p) || b.holds(p)) continue;
        ConstId x = full.pur.const_of.at(p.lhs), y = full.pur.const_of.at(p.rhs);
        std::vector<TermId> witnesses;
        for (ConstId s : shared_consts) {
          if (s == x || s == y) continue;
          if (full.result.holds({x, s}) && full.result.holds({s, y})) witnesses.push_back(full.pur.term_of[s]);
          if (witnesses.size() == kMaxWitnesses) break;
        }
        if (witnesses.size() > 1) witnesses.push_back(st.meet(witnesses));
        for (TermId t : witnesses) {
          bool fresh = false;
          for (TermId u : applies)
            for (TermId from : {p.lhs, p.rhs}) {
              TermId v = substitute(st, u, from, t);
              if (v != u && known.insert(v).second) {
                extra.push_back(v);
                fresh = true;
              }
            }
          if (fresh && is_mixed)
            res.separations.push_back({show_instance(st, alg.axioms, c), show_atom(st, p), st.show(t)});
        }
      }
    }
    if (extra.size() == before) throw Error("interpolation: no separating term found");
  }

  for (const auto& g : found) res.atoms.push_back({back(st, g.lhs), back(st, g.rhs)});

  // vocabulary
  std::set<std::string> names, roles;
  for (TermId c : voc.a_consts)
    if (voc.b_consts.count(c)) names.insert(st.node(c).name);
  for (TermId c = 0; c < theory_limit; ++c)
    if (st.node(c).kind == TermKind::Const) names.insert(st.node(c).name);
  for (OpId f = 0; f < st.op_count(); ++f)
    if (voc.op_a[f] && voc.op_b[f] && !voc.op_fold[f]) roles.insert(st.op(f).role);
  res.shared_names.assign(names.begin(), names.end());
  res.shared_roles.assign(roles.begin(), roles.end());
  for (const auto& g : found)
    for (TermId t : {g.lhs, g.rhs}) {
      std::vector<TermId> cs;
      std::vector<OpId> os;
      st.symbols(t, cs, os);
      for (TermId c : cs)
        if (!names.count(st.node(c).name)) throw Error("interpolant uses the unshared name " + st.node(c).name);
      for (OpId f : os)
        if (!roles.count(st.op(f).role)) throw Error("interpolant uses the unshared role " + st.op(f).role);
    }

  // A ⊨ I and I ∧ B ⊨ ⊥, through the subsumption pipeline
  CBox with_a = theory, with_b = theory;
  std::optional<std::pair<Concept, Concept>> goal;
  for (const auto& l : problem.split) {
    if (l.negated) {
      goal = std::make_pair(l.lhs, l.rhs);
      continue;
    }
    (l.side == Side::A ? with_a : with_b).axioms.push_back(Gci{l.lhs, l.rhs});
  }
  for (const auto& [l, r] : res.atoms) with_b.axioms.push_back(Gci{l, r});
  with_a.axiom_lines.assign(with_a.axioms.size(), 0);
  with_b.axiom_lines.assign(with_b.axioms.size(), 0);
  Reasoner ra(with_a);
  for (const auto& [l, r] : res.atoms)
    if (!ra.check(l, r).holds) throw Error("interpolant conjunct not entailed by A: " + render(l) + " sub " + render(r));
  if (!Reasoner(with_b).check(goal->first, goal->second).holds)
    throw Error("interpolant and B are satisfiable together");
  return res;
}

}  // namespace loctame
