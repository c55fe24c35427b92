// Ground interpolants for unsatisfiable A ∧ B over semilattices with
// operators satisfying the translated role axioms.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loctame/syntax.hpp"

namespace loctame {

// A ∧ B is satisfiable.
class NotUnsat : public Error {
 public:
  using Error::Error;
};

// One replacement of a mixed instance: the premise lhs ≤ rhs crosses the
// partition and is split at the shared term t.
struct Separation {
  std::string instance;  // the dropped instance
  std::string premise;
  std::string term;  // t
};

struct InterpolationResult {
  std::vector<std::pair<Concept, Concept>> atoms;  // the conjunction; empty is top
  std::vector<std::string> shared_names, shared_roles;
  std::vector<Separation> separations;
  int rounds = 0;

  // `C sub D and ...` in DSL syntax, or `top`.
  std::string show() const;
};

// The split literals of problem are A and B; its role declarations and role
// axioms are the theory. At most one negated literal, on the B side. The
// result is checked (vocabulary, A ⊨ I, I ∧ B ⊨ ⊥) before it is returned.
// Throws NotUnsat, UnsupportedConstruct for GCIs, queries or the num sort.
InterpolationResult interpolate(const CBox& problem);

}  // namespace loctame
