#include "loctame/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "loctame/normalize.hpp"

namespace loctame {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  Stopwatch() : t0_(Clock::now()) {}
  double lap() {
    auto t = Clock::now();
    double us = std::chrono::duration<double, std::micro>(t - t0_).count();
    t0_ = t;
    return us;
  }

 private:
  Clock::time_point t0_;
};

NumValue num_value(const TermStore& store, TermId t) {
  const TermNode& n = store.node(t);
  NumValue v;
  switch (n.kind) {
    case TermKind::Zero: v.kind = NumValue::Kind::Empty; break;
    case TermKind::One: v.kind = NumValue::Kind::All; break;
    case TermKind::Interval:
      v.kind = NumValue::Kind::Interval;
      v.interval = n.interval;
      break;
    default: throw UnsupportedConstruct("numeric term outside intervals: " + store.show(t));
  }
  return v;
}

const NumAtom kFalse = NumAtom::le(Endpoint{Rational(1)}, Endpoint{Rational(0)});

struct NumSplit {
  HornProblem concept_part;
  std::vector<NumAtom> num;
  std::vector<MixedClause> mixed;
};

// Separates the numeric atoms: facts become endpoint constraints, clauses
// with numeric premises become mixed clauses.
NumSplit split_num(const HornProblem& p, const Purified& pur, const TermStore& store) {
  NumSplit s;
  auto is_num = [&](const Atom& a) { return p.sorts[a.lhs] == Sort::Num; };
  auto value = [&](ConstId c) { return num_value(store, pur.term_of[c]); };
  auto constraints = [&](const Atom& a) { return inclusion(value(a.lhs), value(a.rhs)); };

  s.concept_part.names = p.names;
  s.concept_part.sorts = p.sorts;
  s.concept_part.origins = p.origins;
  s.concept_part.builtin_transitivity = p.builtin_transitivity;
  s.concept_part.goal = p.goal;
  for (ConstId c = 0; c < p.size(); ++c)
    if (p.sorts[c] == Sort::Num)
      for (auto& a : well_formedness(value(c))) s.num.push_back(std::move(a));
  for (size_t i = 0; i < p.facts.size(); ++i) {
    const Atom& f = p.facts[i];
    if (!is_num(f)) {
      s.concept_part.add_fact(f, p.fact_origin(i));
      continue;
    }
    auto c = constraints(f);
    if (!c) {
      s.num.push_back(kFalse);
      continue;
    }
    s.num.insert(s.num.end(), c->begin(), c->end());
  }
  for (const auto& cl : p.clauses) {
    bool mixed = std::any_of(cl.premises.begin(), cl.premises.end(), is_num);
    if (!mixed) {
      s.concept_part.clauses.push_back(cl);
      continue;
    }
    if (!cl.conclusion || is_num(*cl.conclusion)) throw UnsupportedConstruct("clause with a numeric conclusion");
    MixedClause m;
    m.conclusion = *cl.conclusion;
    m.origin = cl.origin;
    for (const Atom& a : cl.premises) {
      if (!is_num(a)) {
        m.premises.push_back(a);
        continue;
      }
      auto c = constraints(a);
      if (!c) m.never = true;
      else m.num_premises.insert(m.num_premises.end(), c->begin(), c->end());
    }
    s.mixed.push_back(std::move(m));
  }
  return s;
}

bool has_num_const(const HornProblem& p) {
  return std::find(p.sorts.begin(), p.sorts.end(), Sort::Num) != p.sorts.end();
}

}  // namespace

const std::vector<std::string>& Saturated::log() const {
  static const std::vector<std::string> none;
  return combined ? combined->log : none;
}

Reasoner::Reasoner(const CBox& cbox, PipelineOptions opt) : opt_(opt) {
  Stopwatch sw;
  cbox_ = opt.normalize ? normalize(cbox).cbox : cbox;
  alg_ = translate_cbox(cbox_);
  translate_us_ = sw.lap();
}

Reduction Reasoner::reduce(const std::vector<std::pair<Concept, Concept>>& queries, StageMicros& us) const {
  Stopwatch sw;
  Reduction red;
  red.alg = alg_;
  for (const auto& [l, r] : queries) {
    TermId a = translate_concept(red.alg, l);
    TermId b = translate_concept(red.alg, r);
    if (red.alg.store.node(a).sort != red.alg.store.node(b).sort)
      throw Error("query relates concepts of different sorts: " + render(l) + " sub " + render(r));
    red.goals.push_back({a, b});
  }
  us.translate = translate_us_ + sw.lap();

  std::vector<GroundAtom> seeds = red.alg.positives;
  seeds.insert(seeds.end(), red.goals.begin(), red.goals.end());
  red.psi = psi_closure(red.alg.store, red.alg.axioms, psi_seed(red.alg, seeds));
  us.psi = sw.lap();

  red.instances = instantiate(red.alg.store, red.alg.axioms, red.psi, mentions_bottom(red.alg.store, seeds, red.psi));
  us.instantiate = sw.lap();

  red.purified = flatten_purify(red.alg.store, red.alg.axioms, red.instances, red.alg.positives, red.goals);
  us.purify = sw.lap();

  red.problem = sl_instantiate(red.purified, opt_.mode);
  us.semilattice = sw.lap();
  return red;
}

Saturated Reasoner::saturate(const Reduction& red, StageMicros& us) const {
  Stopwatch sw;
  Saturated sat;
  sat.has_num = has_num_const(red.problem);
  if (!sat.has_num) {
    sat.plain = solve(red.problem, SolveOptions{true});
    if (opt_.verify_models && !sat.plain.unsat && !model_check(sat.plain.model, red.problem))
      throw Error("least model violates the reduction");
    us.solve = sw.lap();
    return sat;
  }
  NumSplit split = split_num(red.problem, red.purified, red.alg.store);
  if (red.problem.goal && red.problem.sorts[red.problem.goal->lhs] == Sort::Num) split.concept_part.goal.reset();
  sat.num = split.num;
  sat.num_inconsistent = !num_consistent(split.num);
  sat.combined = combine_solve(split.concept_part, split.num, split.mixed, [&](const Atom& a) {
    return show_const(red, a.lhs) + " <= " + show_const(red, a.rhs);
  });
  if (opt_.verify_models && !sat.num_inconsistent && !sat.combined->unsat &&
      !model_check(sat.combined->last.model, sat.combined->problem))
    throw Error("least model violates the reduction");
  us.solve = sw.lap();
  return sat;
}

bool Reasoner::holds(const Reduction& red, const Saturated& sat, const GroundAtom& goal) const {
  if (sat.num_inconsistent) return true;
  Atom a = red.purified.atom(goal);
  if (red.problem.sorts[a.lhs] == Sort::Num) {
    auto c = inclusion(num_value(red.alg.store, goal.lhs), num_value(red.alg.store, goal.rhs));
    if (!c) return false;
    return std::all_of(c->begin(), c->end(), [&](const NumAtom& x) { return num_entails(sat.num, x); });
  }
  return sat.result().holds(a);
}

QueryResult Reasoner::check(const Concept& lhs, const Concept& rhs) const {
  QueryResult r;
  r.red = reduce({{lhs, rhs}}, r.micros);
  r.red.problem.goal = r.red.purified.atom(r.red.goals[0]);
  r.sat = saturate(r.red, r.micros);
  r.holds = holds(r.red, r.sat, r.red.goals[0]);
  return r;
}

BatchResult Reasoner::check_batch(const std::vector<std::pair<Concept, Concept>>& queries) const {
  BatchResult b;
  Reduction red = reduce(queries, b.micros);
  Saturated sat = saturate(red, b.micros);
  for (const auto& g : red.goals) b.holds.push_back(holds(red, sat, g));
  b.psi_size = red.psi.size();
  b.clause_count = red.problem.clauses.size();
  return b;
}

std::string show_const(const Reduction& red, ConstId c) {
  return red.alg.store.show(red.purified.term_of.at(c));
}

namespace {

std::string show_atom(const Reduction& red, const Atom& a) {
  return show_const(red, a.lhs) + " <= " + show_const(red, a.rhs);
}

std::string show_clause(const Reduction& red, const HornClause& c) {
  std::string s;
  for (size_t i = 0; i < c.premises.size(); ++i) s += (i ? ", " : "") + show_atom(red, c.premises[i]);
  return s + (s.empty() ? "" : " -> ") + (c.conclusion ? show_atom(red, *c.conclusion) : "bot");
}

}  // namespace

std::string explain(const QueryResult& r) {
  const Reduction& red = r.red;
  std::string out = "goal: " + show_atom(red, red.purified.atom(red.goals[0])) + "\n";
  if (!r.holds) return out + "not entailed\n";
  if (r.sat.num_inconsistent) return out + "the numeric constraints are inconsistent\n";
  const HornProblem& p = r.solved_problem();
  if (red.problem.sorts[red.purified.atom(red.goals[0]).lhs] == Sort::Num) {
    out += "entailed by the numeric constraints:\n";
    for (const auto& a : r.sat.num) out += "  " + to_string(a) + "\n";
    return out;
  }
  for (const auto& line : r.sat.log()) out += "combination: " + line + "\n";
  const ProofTrace& trace = r.sat.result().trace;
  Atom goal = red.purified.atom(red.goals[0]);
  std::vector<size_t> steps = trace.support(goal);
  std::unordered_map<size_t, size_t> number;
  for (size_t i = 0; i < steps.size(); ++i) number[steps[i]] = i + 1;
  auto ref = [&](const Atom& a) {
    auto i = trace.find(a);
    return i ? std::to_string(number[*i]) : std::string("?");
  };
  for (size_t i = 0; i < steps.size(); ++i) {
    const ProofStep& s = trace.steps[steps[i]];
    out += std::to_string(i + 1) + ". " + show_atom(red, s.atom) + "   ";
    switch (s.rule) {
      case ProofStep::Rule::Fact: out += "[" + p.origins[p.fact_origin(s.clause)] + "]"; break;
      case ProofStep::Rule::Clause: {
        const HornClause& c = p.clauses[s.clause];
        out += "[" + p.origins[c.origin] + ": " + show_clause(red, c) + "]";
        break;
      }
      case ProofStep::Rule::Transitivity: out += "[transitivity]"; break;
    }
    if (!s.premises.empty()) {
      out += " from";
      for (size_t j = 0; j < s.premises.size(); ++j) out += (j ? ", " : " ") + ref(s.premises[j]);
    }
    out += "\n";
  }
  return out;
}

std::string show_psi(const QueryResult& r) {
  std::string out;
  for (TermId t : r.red.psi) out += r.red.alg.store.show(t) + "\n";
  return out;
}

std::string show_reduction(const QueryResult& r) {
  const Reduction& red = r.red;
  std::string out;
  for (ConstId c = 0; c < red.problem.size(); ++c) {
    const TermNode& n = red.alg.store.node(red.purified.term_of[c]);
    if (n.kind == TermKind::Const) continue;
    out += "# " + red.problem.names[c] + " = " + show_const(red, c) + "\n";
  }
  return out + dump(red.problem);
}

}  // namespace loctame
