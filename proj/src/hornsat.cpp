#include "loctame/hornsat.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

namespace loctame {

std::optional<size_t> ProofTrace::find(const Atom& a) const {
  // Linear scans are too slow for big traces; build the index lazily.
  if (index_.size() != steps.size()) {
    index_.clear();
    for (size_t i = 0; i < steps.size(); ++i) index_.emplace(steps[i].atom, i);
  }
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<size_t> ProofTrace::support(const Atom& a) const {
  std::vector<size_t> out;
  auto root = find(a);
  if (!root) return out;
  std::vector<char> seen(steps.size(), 0);
  std::vector<size_t> stack{*root};
  while (!stack.empty()) {
    size_t s = stack.back();
    stack.pop_back();
    if (seen[s]) continue;
    seen[s] = 1;
    out.push_back(s);
    for (const Atom& p : steps[s].premises)
      if (auto i = find(p)) stack.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Compact ids for atoms; dense table when the vocabulary is small enough.
class AtomTable {
 public:
  explicit AtomTable(size_t n) : n_(n), dense_(n * n <= (size_t{1} << 24)) {
    if (dense_) slot_.assign(n * n, -1);
  }

  std::uint32_t intern(const Atom& a) {
    if (dense_) {
      auto& s = slot_[static_cast<size_t>(a.lhs) * n_ + a.rhs];
      if (s < 0) {
        s = static_cast<std::int32_t>(atoms_.size());
        atoms_.push_back(a);
      }
      return static_cast<std::uint32_t>(s);
    }
    auto [it, fresh] = map_.emplace(a, static_cast<std::uint32_t>(atoms_.size()));
    if (fresh) atoms_.push_back(a);
    return it->second;
  }

  const Atom& atom(std::uint32_t id) const { return atoms_[id]; }
  size_t size() const { return atoms_.size(); }

 private:
  size_t n_;
  bool dense_;
  std::vector<std::int32_t> slot_;
  std::unordered_map<Atom, std::uint32_t, AtomHash> map_;
  std::vector<Atom> atoms_;
};

class Saturation {
 public:
  Saturation(const HornProblem& p, SolveOptions opt) : p_(p), opt_(opt), table_(p.size()) {}

  SolveResult run() {
    res_.stats.literal_occurrences = p_.literal_occurrences();
    build_watches();
    if (p_.goal) goal_ = table_.intern(*p_.goal);
    if (p_.builtin_transitivity) {
      succ_.resize(p_.size());
      pred_.resize(p_.size());
    }
    for (size_t i = 0; i < p_.facts.size(); ++i) {
      const Atom& f = p_.facts[i];
      derive(f, ProofStep{f, ProofStep::Rule::Fact, static_cast<std::uint32_t>(i), {}});
      if (done()) return finish();
    }
    for (size_t c = 0; c < p_.clauses.size(); ++c) {
      if (p_.clauses[c].premises.empty()) fire(c);
      if (done()) return finish();
    }
    while (head_ < queue_.size() && !done()) process(queue_[head_++]);
    return finish();
  }

 private:
  bool done() const { return res_.unsat && opt_.stop_at_goal; }

  void build_watches() {
    std::vector<std::uint32_t> ids;
    for (const auto& c : p_.clauses)
      for (const auto& a : c.premises) ids.push_back(table_.intern(a));
    offsets_.assign(table_.size() + 1, 0);
    for (auto id : ids) ++offsets_[id + 1];
    for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    watches_.resize(ids.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    size_t k = 0;
    remaining_.resize(p_.clauses.size());
    for (size_t c = 0; c < p_.clauses.size(); ++c) {
      remaining_[c] = static_cast<std::uint32_t>(p_.clauses[c].premises.size());
      for (size_t j = 0; j < p_.clauses[c].premises.size(); ++j) watches_[fill[ids[k++]]++] = static_cast<std::uint32_t>(c);
    }
    watched_ = table_.size();
  }

  void derive(const Atom& a, ProofStep step) {
    std::uint32_t id = table_.intern(a);
    if (id >= derived_.size()) derived_.resize(table_.size(), 0);
    if (derived_[id]) return;
    derived_[id] = 1;
    res_.trace.steps.push_back(std::move(step));
    res_.model.push_back(a);
    queue_.push_back(id);
    ++res_.stats.derived;
    if (goal_ && id == *goal_) res_.unsat = true;
  }

  void fire(size_t c) {
    const HornClause& cl = p_.clauses[c];
    if (!cl.conclusion) {
      res_.unsat = true;
      res_.bottom_clause = c;
      return;
    }
    derive(*cl.conclusion, ProofStep{*cl.conclusion, ProofStep::Rule::Clause, static_cast<std::uint32_t>(c), cl.premises});
  }

  void process(std::uint32_t id) {
    if (id < watched_) {
      for (auto w = offsets_[id]; w < offsets_[id + 1]; ++w) {
        std::uint32_t c = watches_[w];
        ++res_.stats.decrements;
        assert(remaining_[c] > 0);
        if (--remaining_[c] == 0) fire(c);
        if (done()) return;
      }
    }
    if (!p_.builtin_transitivity) return;
    Atom a = table_.atom(id);
    if (a.lhs == a.rhs) return;
    succ_[a.lhs].push_back(a.rhs);
    pred_[a.rhs].push_back(a.lhs);
    for (size_t i = 0; i < succ_[a.rhs].size(); ++i) {
      ConstId z = succ_[a.rhs][i];
      Atom r{a.lhs, z};
      ++res_.stats.transitivity_steps;
      derive(r, ProofStep{r, ProofStep::Rule::Transitivity, 0, {a, Atom{a.rhs, z}}});
      if (done()) return;
    }
    for (size_t i = 0; i < pred_[a.lhs].size(); ++i) {
      ConstId w = pred_[a.lhs][i];
      Atom r{w, a.rhs};
      ++res_.stats.transitivity_steps;
      derive(r, ProofStep{r, ProofStep::Rule::Transitivity, 0, {Atom{w, a.lhs}, a}});
      if (done()) return;
    }
  }

  SolveResult finish() {
    // each premise occurrence is counted down at most once
    if (res_.stats.decrements > res_.stats.literal_occurrences)
      throw Error("premise counters decremented more often than literals occur");
    return std::move(res_);
  }

  const HornProblem& p_;
  SolveOptions opt_;
  AtomTable table_;
  std::vector<std::uint32_t> offsets_, watches_, remaining_;
  size_t watched_ = 0;
  std::vector<char> derived_;
  std::vector<std::uint32_t> queue_;
  size_t head_ = 0;
  std::optional<std::uint32_t> goal_;
  std::vector<std::vector<ConstId>> succ_, pred_;
  SolveResult res_;
};

}  // namespace

SolveResult solve(const HornProblem& p, SolveOptions opt) { return Saturation(p, opt).run(); }

bool model_check(const std::vector<Atom>& model, const HornProblem& p) {
  std::unordered_set<Atom, AtomHash> m(model.begin(), model.end());
  for (const Atom& f : p.facts)
    if (!m.count(f)) return false;
  for (const auto& c : p.clauses) {
    bool all = std::all_of(c.premises.begin(), c.premises.end(), [&](const Atom& a) { return m.count(a) > 0; });
    if (!all) continue;
    if (!c.conclusion || !m.count(*c.conclusion)) return false;
  }
  if (p.goal && m.count(*p.goal)) return false;
  if (p.builtin_transitivity) {
    std::vector<std::vector<ConstId>> succ(p.size());
    for (const Atom& a : model) succ[a.lhs].push_back(a.rhs);
    for (const Atom& a : model)
      for (ConstId z : succ[a.rhs])
        if (!m.count(Atom{a.lhs, z})) return false;
  }
  return true;
}

bool replay(const ProofTrace& trace, const HornProblem& p) {
  std::unordered_set<Atom, AtomHash> facts(p.facts.begin(), p.facts.end());
  std::unordered_set<Atom, AtomHash> seen;
  for (const auto& s : trace.steps) {
    switch (s.rule) {
      case ProofStep::Rule::Fact:
        if (!facts.count(s.atom)) return false;
        break;
      case ProofStep::Rule::Clause: {
        if (s.clause >= p.clauses.size()) return false;
        const HornClause& c = p.clauses[s.clause];
        if (!c.conclusion || !(*c.conclusion == s.atom) || c.premises != s.premises) return false;
        for (const Atom& a : s.premises)
          if (!seen.count(a)) return false;
        break;
      }
      case ProofStep::Rule::Transitivity:
        if (!p.builtin_transitivity || s.premises.size() != 2) return false;
        if (s.premises[0].lhs != s.atom.lhs || s.premises[1].rhs != s.atom.rhs ||
            s.premises[0].rhs != s.premises[1].lhs)
          return false;
        if (!seen.count(s.premises[0]) || !seen.count(s.premises[1])) return false;
        break;
    }
    seen.insert(s.atom);
  }
  return true;
}

}  // namespace loctame
