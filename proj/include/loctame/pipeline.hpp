// End-to-end subsumption checking: translate, close under Ψ, instantiate,
// purify, add the semilattice axioms and saturate.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loctame/algebra.hpp"
#include "loctame/concdom.hpp"
#include "loctame/hornsat.hpp"
#include "loctame/reduce.hpp"
#include "loctame/syntax.hpp"

namespace loctame {

struct PipelineOptions {
  Mode mode = Mode::Chase;
  bool normalize = false;
  bool verify_models = false;  // model-check every satisfiable run; throws on failure
};

// Microseconds per stage.
struct StageMicros {
  double translate = 0, psi = 0, instantiate = 0, purify = 0, semilattice = 0, solve = 0;
  double total() const { return translate + psi + instantiate + purify + semilattice + solve; }
};

struct Reduction {
  AlgebraicCBox alg;  // with the query terms added
  std::vector<GroundAtom> goals;
  std::vector<TermId> psi;
  std::vector<TermClause> instances;
  Purified purified;
  HornProblem problem;  // base plus semilattice axioms
};

struct Saturated {
  bool has_num = false;
  bool num_inconsistent = false;
  std::vector<NumAtom> num;               // endpoint constraints from num facts
  std::optional<CombineResult> combined;  // when the num sort occurs
  SolveResult plain;                      // otherwise

  const SolveResult& result() const { return combined ? combined->last : plain; }
  const std::vector<std::string>& log() const;
};

struct QueryResult {
  bool holds = false;
  Reduction red;
  Saturated sat;
  StageMicros micros;

  // The problem whose least model sat.result() describes.
  const HornProblem& solved_problem() const {
    return sat.combined && !sat.num_inconsistent ? sat.combined->problem : red.problem;
  }
};

struct BatchResult {
  std::vector<bool> holds;
  size_t psi_size = 0;
  size_t clause_count = 0;
  StageMicros micros;
};

class Reasoner {
 public:
  explicit Reasoner(const CBox& cbox, PipelineOptions opt = {});

  QueryResult check(const Concept& lhs, const Concept& rhs) const;
  // One shared saturation answering every query.
  BatchResult check_batch(const std::vector<std::pair<Concept, Concept>>& queries) const;

  const CBox& cbox() const { return cbox_; }
  const AlgebraicCBox& algebra() const { return alg_; }
  const PipelineOptions& options() const { return opt_; }

 private:
  Reduction reduce(const std::vector<std::pair<Concept, Concept>>& queries, StageMicros& us) const;
  Saturated saturate(const Reduction& red, StageMicros& us) const;
  bool holds(const Reduction& red, const Saturated& sat, const GroundAtom& goal) const;

  CBox cbox_;
  AlgebraicCBox alg_;
  PipelineOptions opt_;
  double translate_us_ = 0;
};

// Numbered derivation of the goal, one clause instance per step.
std::string explain(const QueryResult& r);
// The Ψ-terms, one per line.
std::string show_psi(const QueryResult& r);
// Definitions of the proxies as comments, followed by the ground problem.
std::string show_reduction(const QueryResult& r);
// Display form of a constant of the reduction.
std::string show_const(const Reduction& red, ConstId c);

}  // namespace loctame
