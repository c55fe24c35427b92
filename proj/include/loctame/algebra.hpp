// Translation of CBoxes into flat axioms over semilattices with operators,
// and the Ψ-closure of ground operator terms.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loctame/syntax.hpp"
#include "loctame/terms.hpp"

namespace loctame {

// An operator occurrence f(x̄) in an axiom. Positions fixed by role
// restrictions carry a ground term; the others are variables, in order.
struct OpPattern {
  OpId op = 0;
  std::vector<std::optional<TermId>> fixed;

  int free_count() const;
  std::vector<Sort> free_sorts(const TermStore& store) const;
  TermId apply(TermStore& store, const std::vector<TermId>& vars) const;
  // Variables bound when t is an instance of this pattern.
  std::optional<std::vector<TermId>> match(const TermStore& store, TermId t) const;
  bool operator==(const OpPattern&) const = default;
};

struct AlgAxiom {
  enum class Kind : std::uint8_t { Mon, K1, K2, K3 };
  Kind kind = Kind::Mon;
  OpId mon = 0;                  // Mon
  OpPattern f;                   // K1: g in g(x̄) ≤ h(x̄); K2, K3: outer f
  std::vector<OpPattern> inner;  // K2, K3: g_1 … g_n
  OpPattern h;                   // K1, K2: head
  std::optional<TermId> guard;   // each variable of the guard's sort is ≤ guard
  std::string label;
};

struct GroundAtom {
  TermId lhs = 0, rhs = 0;
  bool operator==(const GroundAtom&) const = default;
  bool operator<(const GroundAtom& o) const { return lhs != o.lhs ? lhs < o.lhs : rhs < o.rhs; }
};

struct AlgebraicCBox {
  TermStore store;
  std::vector<AlgAxiom> axioms;
  std::vector<GroundAtom> positives;  // one atom per GCI
  std::vector<TermId> seed_extra;     // Apply subterms of guards and restriction fillers
  std::map<std::string, OpPattern> patterns;
};

AlgebraicCBox translate_cbox(const CBox& cbox);
TermId translate_concept(AlgebraicCBox& alg, const Concept& c);

struct Goal {
  std::vector<GroundAtom> positives;
  GroundAtom negative;  // the query lhs ≤ rhs, asserted false
};

struct Translation {
  AlgebraicCBox alg;
  Goal goal;
};

Translation translate(const CBox& cbox, const Concept& lhs, const Concept& rhs);

// Apply subterms of the atoms plus the cbox's extra seed, sorted and distinct.
std::vector<TermId> psi_seed(const AlgebraicCBox& alg, const std::vector<GroundAtom>& atoms);

// Least superset of seed closed under K1 and K2 heads. Sorted, distinct.
std::vector<TermId> psi_closure(TermStore& store, const std::vector<AlgAxiom>& axioms,
                                const std::vector<TermId>& seed);

}  // namespace loctame
