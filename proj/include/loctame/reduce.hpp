// Locality-based reduction: instantiate the axioms at the Ψ-terms, purify
// into constants, and add the semilattice axioms as ground Horn clauses.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loctame/algebra.hpp"
#include "loctame/horn.hpp"

namespace loctame {

enum class Mode : std::uint8_t {
  Chase,        // transitivity handled inside the solver
  Instantiate,  // transitivity as explicit ground clauses
};

// Marks instances of x ≤ 0 → f(…, x, …) ≤ 0 in TermClause::axiom.
inline constexpr std::uint32_t kStrictAxiom = 0xffffffffu;

struct TermClause {
  std::vector<GroundAtom> premises;
  GroundAtom conclusion;
  std::uint32_t axiom = 0;  // index into the axiom list, or kStrictAxiom
};

std::string axiom_label(const std::vector<AlgAxiom>& axioms, const TermClause& c);

// Ground instances of the axioms whose operator terms all lie in psi.
// Duplicates (same premises and conclusion) are dropped. With strict set,
// every operator term also gets x ≤ 0 → f(…, x, …) ≤ 0 for each argument.
std::vector<TermClause> instantiate(TermStore& store, const std::vector<AlgAxiom>& axioms,
                                    const std::vector<TermId>& psi, bool strict = false);

// True when 0 occurs as a side of an atom or as an argument of a term in psi.
bool mentions_bottom(const TermStore& store, const std::vector<GroundAtom>& atoms, const std::vector<TermId>& psi);

// Number of Mon instances instantiate() produces for psi, counted directly.
size_t mon_instance_count(const TermStore& store, const std::vector<TermId>& psi);

struct MeetDef {
  ConstId proxy = 0;
  std::vector<ConstId> operands;
};

struct Purified {
  HornProblem base;  // constants, positive facts, axiom instances, goal
  std::vector<TermId> term_of;
  std::unordered_map<TermId, ConstId> const_of;
  std::vector<MeetDef> meets;
  ConstId zero = 0, one = 1;  // concept-sort bottom and top

  Atom atom(const GroundAtom& a) const { return {const_of.at(a.lhs), const_of.at(a.rhs)}; }
};

// Every term occurring in an atom (and every meet operand) becomes a
// constant; operator terms and meets get proxies $k, intervals $i<k>.
// The goal atoms only contribute constants; base.goal is left unset.
Purified flatten_purify(const TermStore& store, const std::vector<AlgAxiom>& axioms,
                        const std::vector<TermClause>& instances, const std::vector<GroundAtom>& facts,
                        const std::vector<GroundAtom>& goals);

// Receives the semilattice axioms for the concept-sort constants.
class SlSink {
 public:
  virtual ~SlSink() = default;
  virtual void fact(const Atom& a, std::uint32_t origin) = 0;
  virtual void clause(HornClause c) = 0;
  // Transitivity over n constants: n(n-1)(n-2) clauses. The default expands
  // them one by one through clause().
  virtual void transitivity(const std::vector<ConstId>& consts, std::uint32_t origin);
};

void sl_emit(const Purified& pur, Mode mode, HornProblem& labels, SlSink& sink);

// The complete ground problem.
HornProblem sl_instantiate(const Purified& pur, Mode mode);

// Clause count of sl_instantiate(pur, mode) without building the clauses.
size_t sl_clause_count(const Purified& pur, Mode mode);

}  // namespace loctame
