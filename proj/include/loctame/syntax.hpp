// Abstract syntax, parser and printer for CBoxes.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace loctame {

using Rational = boost::rational<long long>;

enum class Sort : std::uint8_t { Concept, Num };

std::string_view to_string(Sort s);

struct SourceLoc {
  int line = 0;
  int column = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(SourceLoc loc, const std::string& msg);
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

// An interval endpoint: a rational literal or a named numeric parameter.
struct Endpoint {
  std::variant<Rational, std::string> value;

  bool is_literal() const { return value.index() == 0; }
  const Rational& literal() const { return std::get<Rational>(value); }
  const std::string& param() const { return std::get<std::string>(value); }
  bool operator==(const Endpoint& o) const { return value == o.value; }
  bool operator<(const Endpoint& o) const;
};

std::string to_string(const Endpoint& e);
std::string to_string(const Rational& q);

struct IntervalConcept {
  enum class Kind : std::uint8_t { Up, Down, Closed };
  Kind kind = Kind::Up;
  Endpoint lo;  // Up, Closed
  Endpoint hi;  // Down, Closed

  static IntervalConcept up(Endpoint q);
  static IntervalConcept down(Endpoint q);
  static IntervalConcept closed(Endpoint lo, Endpoint hi);

  bool operator==(const IntervalConcept& o) const;
  bool operator<(const IntervalConcept& o) const;
};

struct Concept {
  enum class Kind : std::uint8_t { Bottom, Top, Name, Conj, Exists, Interval };

  Kind kind = Kind::Top;
  Sort sort = Sort::Concept;
  std::string name;           // concept name, or role name for Exists
  std::vector<Concept> args;  // Conj: {left, right}; Exists: fillers
  IntervalConcept interval;

  static Concept top(Sort s = Sort::Concept);
  static Concept bottom(Sort s = Sort::Concept);
  static Concept named(std::string n);
  static Concept conj(Concept l, Concept r);
  static Concept exists(std::string role, std::vector<Concept> fillers);
  static Concept num(IntervalConcept i);

  bool operator==(const Concept& o) const;
};

// Conjunction of a non-empty list, left-nested.
Concept conj_all(std::vector<Concept> parts);

struct Gci {
  Concept lhs, rhs;
  bool operator==(const Gci&) const = default;
};

// head ⊑ rhs when tail is empty; head∘tail[0]∘... for plain chains;
// head∘(tail[0],...,tail[n-1]) when tuple is set.
struct RoleInclusion {
  std::string head;
  std::vector<std::string> tail;
  bool tuple = false;
  std::optional<std::string> rhs;  // nullopt means id
  std::optional<Concept> guard;
  bool operator==(const RoleInclusion&) const = default;
};

// role = base restricted at position (1-based, subject is position 1) to filler.
struct RoleRestriction {
  std::string role;
  std::string base;
  int position = 2;
  Concept filler;
  bool operator==(const RoleRestriction&) const = default;
};

using Axiom = std::variant<Gci, RoleInclusion, RoleRestriction>;

struct Query {
  Concept lhs, rhs;
  bool operator==(const Query&) const = default;
};

enum class Side : std::uint8_t { A, B };

// A colored literal of an interpolation problem.
struct SplitLiteral {
  Side side = Side::A;
  Concept lhs, rhs;
  bool negated = false;
  bool operator==(const SplitLiteral&) const = default;
};

struct RoleSig {
  std::vector<Sort> sorts;  // all positions, subject first
  int arity() const { return static_cast<int>(sorts.size()); }
  bool operator==(const RoleSig&) const = default;
};

struct CBox {
  std::map<std::string, RoleSig> roles;
  std::vector<Axiom> axioms;
  std::vector<Query> queries;
  std::vector<SplitLiteral> split;
  std::vector<int> axiom_lines;  // diagnostics only, ignored by ==

  bool operator==(const CBox& o) const {
    return roles == o.roles && axioms == o.axioms && queries == o.queries && split == o.split;
  }

  bool has_role(const std::string& role) const;
  // Signature of a role, following restrictions. Throws Error if unknown.
  RoleSig sig(const std::string& role) const;
  const RoleRestriction* restriction(const std::string& role) const;
  std::vector<std::string> concept_names() const;
};

CBox parse_cbox(std::string_view text);
CBox parse_cbox_file(const std::string& path);

// Parses a single concept expression against the roles of cbox.
Concept parse_concept(const CBox& cbox, std::string_view text);

std::string render(const CBox& cbox);
std::string render(const Concept& c);
std::string render(const Axiom& a);

bool is_identifier(std::string_view s);

}  // namespace loctame
