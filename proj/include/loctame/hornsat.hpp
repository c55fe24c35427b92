// Forward chaining for ground Horn problems, with proof recording.
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "loctame/horn.hpp"

namespace loctame {

struct ProofStep {
  enum class Rule : std::uint8_t { Fact, Clause, Transitivity };
  Atom atom;
  Rule rule = Rule::Fact;
  std::uint32_t clause = 0;  // clause index, or fact index for Rule::Fact
  std::vector<Atom> premises;
};

struct ProofTrace {
  std::vector<ProofStep> steps;  // derivation order; premises always precede

  // Index of the step deriving a, if any.
  std::optional<size_t> find(const Atom& a) const;
  // Steps needed to justify a, in derivation order.
  std::vector<size_t> support(const Atom& a) const;

 private:
  mutable std::unordered_map<Atom, size_t, AtomHash> index_;
};

struct SolveStats {
  std::uint64_t decrements = 0;
  std::uint64_t literal_occurrences = 0;
  std::uint64_t transitivity_steps = 0;
  std::uint64_t derived = 0;
};

struct SolveResult {
  bool unsat = false;
  std::optional<size_t> bottom_clause;  // set when a ⊥ clause fired
  ProofTrace trace;
  std::vector<Atom> model;  // every derived atom (the least model when sat)
  SolveStats stats;

  bool holds(const Atom& a) const { return trace.find(a).has_value(); }
};

struct SolveOptions {
  bool stop_at_goal = true;
};

SolveResult solve(const HornProblem& p, SolveOptions opt = {});

// True iff model contains the facts, is closed under the clauses (and under
// transitivity when the problem uses it built in) and omits the goal.
bool model_check(const std::vector<Atom>& model, const HornProblem& p);

// Re-checks every step of a trace against the problem.
bool replay(const ProofTrace& trace, const HornProblem& p);

}  // namespace loctame
