// Normal form for the binary EL+ fragment.
#pragma once

#include <string>
#include <vector>

#include "loctame/syntax.hpp"

namespace loctame {

// GCIs have one of the shapes A ⊑ B, A1 ⊓ A2 ⊑ B, A ⊑ ∃r.B, ∃r.A ⊑ B where A, B
// are names or top (B may also be bot); role inclusions are r ⊑ s or r1∘r2 ⊑ s.
struct NormalizedCBox {
  CBox cbox;
  std::vector<std::string> fresh;
};

// Throws UnsupportedConstruct outside binary EL+ (n-ary roles, guards, id,
// restrictions, intervals). Queries are copied unchanged.
NormalizedCBox normalize(const CBox& cbox);

bool is_normal_gci(const Gci& g);

// Number of concept and role symbol occurrences in the axioms.
size_t symbol_count(const CBox& cbox);

}  // namespace loctame
