// Independent validators: an EL+ completion classifier and a search for
// small relational countermodels. Neither uses the algebraic pipeline.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loctame/normalize.hpp"
#include "loctame/syntax.hpp"

namespace loctame {

struct SubsumptionSet {
  std::map<std::string, std::set<std::string>> subsumers;  // includes the name itself and top

  // A ⊑ B; a name absent from the CBox has the subsumers of top.
  bool subsumes(const std::string& a, const std::string& b) const;
};

// Completion rules CR1–CR5, CR10, CR11 on a normalized binary EL+ CBox.
// Unsatisfiable names are subsumed by everything.
SubsumptionSet completion_classify(const NormalizedCBox& n);

// lhs ⊑ rhs via fresh names X ≡ lhs, Y ≡ rhs, normalization and completion.
bool completion_subsumes(const CBox& cbox, const Concept& lhs, const Concept& rhs);

// A finite interpretation over {0, …, size-1}.
struct Interpretation {
  int size = 0;
  std::map<std::string, std::set<int>> concepts;
  std::map<std::string, std::set<std::vector<int>>> roles;  // base roles, full tuples

  std::string show() const;
};

// Extension of a (concept-sort) concept; restricted roles are derived
// from their base role.
std::set<int> extension(const CBox& cbox, const Interpretation& m, const Concept& c);
// Tuples of a role, following restrictions.
std::set<std::vector<int>> role_extension(const CBox& cbox, const Interpretation& m, const std::string& role);
// Every GCI and role axiom holds in m.
bool is_model(const CBox& cbox, const Interpretation& m);

struct CounterModel {
  Interpretation model;
  int witness = 0;  // element in lhs but not in rhs
};

// Smallest interpretation of size ≤ max_size satisfying the CBox in which
// lhs ⋢ rhs, if any. Throws UnsupportedConstruct on num-sort roles or
// concepts. max_size must be at most 4.
std::optional<CounterModel> bounded_model_search(const CBox& cbox, const Concept& lhs, const Concept& rhs,
                                                 int max_size);

// Propositional satisfiability by DPLL with unit propagation. Literals are
// ±(var+1).
class Dpll {
 public:
  int new_var();
  void add_clause(std::vector<int> lits);
  bool solve();
  bool value(int var) const { return assign_[var] > 0; }
  int vars() const { return static_cast<int>(assign_.size()); }
  size_t clause_count() const { return clauses_.size(); }

 private:
  bool assign(int lit, int reason);
  bool propagate();
  void undo_to(size_t trail_size);
  std::vector<int>& watches(int lit) { return watch_[lit > 0 ? 2 * (lit - 1) : 2 * (-lit - 1) + 1]; }
  int lit_value(int lit) const;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watch_;
  std::vector<signed char> assign_;
  std::vector<int> trail_;
  size_t qhead_ = 0;
  bool conflict_ = false;  // empty clause or conflicting units at the root
  std::vector<int> pending_units_;
};

}  // namespace loctame
