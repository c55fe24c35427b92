// Interval concepts over the rationals and the combination loop joining the
// numeric sort with the semilattice sort.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loctame/hornsat.hpp"
#include "loctame/syntax.hpp"

namespace loctame {

class UnsupportedAtom : public Error {
 public:
  using Error::Error;
};

// lhs rel rhs over interval endpoints (parameters or rational literals).
struct NumAtom {
  enum class Rel : std::uint8_t { Le, Eq, Ne };
  Rel rel = Rel::Le;
  Endpoint lhs, rhs;

  static NumAtom le(Endpoint a, Endpoint b) { return {Rel::Le, std::move(a), std::move(b)}; }
  bool operator==(const NumAtom&) const = default;
};

std::string to_string(const NumAtom& a);

// Entailment over ℚ. Inconsistent constraints entail everything.
// Throws UnsupportedAtom on ≠.
bool num_entails(const std::vector<NumAtom>& constraints, const NumAtom& query);
bool num_consistent(const std::vector<NumAtom>& constraints);

// Denotation of a num-sort constant.
struct NumValue {
  enum class Kind : std::uint8_t { Empty, All, Interval };
  Kind kind = Kind::All;
  IntervalConcept interval;
};

// Endpoint conditions equivalent to a ⊆ b (given well-formed intervals);
// nullopt when the inclusion never holds, an empty list when it always does.
std::optional<std::vector<NumAtom>> inclusion(const NumValue& a, const NumValue& b);

// lo ≤ hi for closed intervals with a parameter endpoint.
std::vector<NumAtom> well_formedness(const NumValue& v);

// A clause with numeric premises (a conjunction of endpoint atoms, or never
// satisfiable) and concept premises.
struct MixedClause {
  std::vector<NumAtom> num_premises;
  bool never = false;
  std::vector<Atom> premises;
  Atom conclusion;
  std::uint32_t origin = 0;
};

struct CombineResult {
  bool unsat = false;
  std::vector<std::string> log;
  size_t iterations = 0;
  SolveResult last;      // final concept-sort saturation
  HornProblem problem;   // concept problem with the moved conclusions as facts
};

// show renders concept atoms in the log; defaults to the constant names.
CombineResult combine_solve(const HornProblem& concept_problem, const std::vector<NumAtom>& num,
                            const std::vector<MixedClause>& mixed,
                            const std::function<std::string(const Atom&)>& show = {});

}  // namespace loctame
