// Random and parametric CBox families for property tests and benchmarks.
#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "loctame/syntax.hpp"

namespace loctame {

using Rng = std::mt19937_64;

struct ElParams {
  int max_names = 12;
  int max_roles = 4;
  int max_axioms = 30;
  double role_axiom_rate = 0.15;
  double bottom_rate = 0.04;
};

// Normalized binary EL+ CBox over names A0…, roles r0…; every name and role
// is declared or used.
CBox random_normal_el(Rng& rng, const ElParams& p = {});

// Binary EL+ with nested concepts on both sides, equivalences, and role
// chains up to length 3.
CBox random_el(Rng& rng, int max_names = 6, int max_axioms = 10);

struct ExtParams {
  int max_names = 3;
  int max_axioms = 6;
  int depth = 2;
};

// Guarded, n-ary and identity role inclusions plus a role restriction, over
// binary roles r0, r1, r2, ternary roles t0, t1 and the restriction s0 of t0.
CBox random_extended(Rng& rng, const ExtParams& p = {});

// A concept over the given names and the roles of cbox (restrictions
// included); concept-sort roles only.
Concept random_concept(Rng& rng, const CBox& cbox, const std::vector<std::string>& names, int depth);

// An interpolation problem over the role axioms of random_extended: A-literals
// over names a0…, s0…, B-literals over b0…, s0…, and one negated B-literal.
// Not necessarily unsatisfiable.
CBox random_split(Rng& rng, int literals = 10);

// n GCIs A_i ⊑ ∃r.A_{i+1} and the query A0 ⊑ ∃r.A1.
CBox chain_family(int n);

}  // namespace loctame
