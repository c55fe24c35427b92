// Ground Horn problems over poset atoms c ≤ d.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loctame/syntax.hpp"

namespace loctame {

using ConstId = std::uint32_t;

struct Atom {
  ConstId lhs = 0, rhs = 0;
  bool operator==(const Atom&) const = default;
  bool operator<(const Atom& o) const { return lhs != o.lhs ? lhs < o.lhs : rhs < o.rhs; }
};

struct AtomHash {
  size_t operator()(const Atom& a) const { return (static_cast<size_t>(a.lhs) << 32) ^ a.rhs; }
};

struct HornClause {
  std::vector<Atom> premises;
  std::optional<Atom> conclusion;  // nullopt is ⊥
  std::uint32_t origin = 0;        // index into HornProblem::origins
};

struct HornProblem {
  std::vector<std::string> names;  // one per constant
  std::vector<Sort> sorts;
  std::vector<Atom> facts;
  std::vector<std::uint32_t> fact_origins;  // parallel to facts when non-empty
  std::vector<HornClause> clauses;
  std::optional<Atom> goal;
  bool builtin_transitivity = false;
  std::vector<std::string> origins{"fact"};

  ConstId add_const(std::string name, Sort s = Sort::Concept);
  std::uint32_t origin(const std::string& label);
  void add_fact(Atom a, std::uint32_t origin);
  std::uint32_t fact_origin(size_t i) const { return i < fact_origins.size() ? fact_origins[i] : 0; }
  size_t size() const { return names.size(); }
  size_t literal_occurrences() const;
  std::string show(const Atom& a) const { return names[a.lhs] + " <= " + names[a.rhs]; }
};

// `fact a <= b`, `clause a<=b, c<=d -> e<=f` (or `-> bot`), `goal x <= y`;
// `#` starts a comment.
std::string dump(const HornProblem& p);
HornProblem parse_dump(std::string_view text);

}  // namespace loctame
