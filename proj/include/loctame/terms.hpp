// Interned ground terms over the semilattice signature with operators f_∃r.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loctame/syntax.hpp"

namespace loctame {

using TermId = std::uint32_t;
using OpId = std::uint32_t;

struct OperatorSymbol {
  std::string name;  // f_<role>
  std::string role;
  std::vector<Sort> arg_sorts;
  int arity() const { return static_cast<int>(arg_sorts.size()); }
};

enum class TermKind : std::uint8_t { Zero, One, Const, Meet, Apply, Interval };

struct TermNode {
  TermKind kind = TermKind::Const;
  Sort sort = Sort::Concept;
  OpId op = 0;
  std::string name;          // Const
  std::vector<TermId> args;  // Meet operands (sorted, distinct) or Apply arguments
  IntervalConcept interval;  // Interval
};

// Hash-consing table: structurally equal terms get the same id. Meets are
// flattened, sorted and duplicate-free; a meet of one term is that term.
class TermStore {
 public:
  TermStore();

  TermId zero(Sort s = Sort::Concept) const { return s == Sort::Concept ? 0 : 2; }
  TermId one(Sort s = Sort::Concept) const { return s == Sort::Concept ? 1 : 3; }
  TermId constant(const std::string& name, Sort s = Sort::Concept);
  TermId meet(std::vector<TermId> parts);
  TermId apply(OpId op, std::vector<TermId> args);
  TermId interval(const IntervalConcept& i);

  OpId op_for_role(const std::string& role, const std::vector<Sort>& arg_sorts);
  const OperatorSymbol& op(OpId id) const { return ops_[id]; }
  size_t op_count() const { return ops_.size(); }
  std::optional<OpId> find_op(const std::string& role) const;

  const TermNode& node(TermId t) const { return nodes_[t]; }
  size_t size() const { return nodes_.size(); }
  bool is_apply(TermId t) const { return nodes_[t].kind == TermKind::Apply; }

  // f_r(a, b ∧ c) style rendering.
  std::string show(TermId t) const;
  // Back-translation into concept syntax; operators map back to their roles.
  Concept to_concept(TermId t) const;

  // Apply subterms of t (including t), in no particular order.
  void apply_subterms(TermId t, std::vector<TermId>& out) const;
  // Constant and operator symbols of t.
  void symbols(TermId t, std::vector<TermId>& consts, std::vector<OpId>& ops) const;

 private:
  TermId intern(TermNode n);
  static std::string key(const TermNode& n);

  std::vector<TermNode> nodes_;
  std::unordered_map<std::string, TermId> index_;
  std::vector<OperatorSymbol> ops_;
  std::unordered_map<std::string, OpId> op_index_;
};

}  // namespace loctame
