#include "loctame/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace loctame {

std::string_view to_string(Sort s) { return s == Sort::Concept ? "concept" : "num"; }

ParseError::ParseError(SourceLoc loc, const std::string& msg)
    : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg), loc_(loc) {}

bool Endpoint::operator<(const Endpoint& o) const {
  if (value.index() != o.value.index()) return value.index() < o.value.index();
  if (is_literal()) return literal() < o.literal();
  return param() < o.param();
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const Endpoint& e) { return e.is_literal() ? to_string(e.literal()) : e.param(); }

IntervalConcept IntervalConcept::up(Endpoint q) {
  IntervalConcept i;
  i.kind = Kind::Up;
  i.lo = std::move(q);
  return i;
}

IntervalConcept IntervalConcept::down(Endpoint q) {
  IntervalConcept i;
  i.kind = Kind::Down;
  i.hi = std::move(q);
  return i;
}

IntervalConcept IntervalConcept::closed(Endpoint lo, Endpoint hi) {
  IntervalConcept i;
  i.kind = Kind::Closed;
  i.lo = std::move(lo);
  i.hi = std::move(hi);
  return i;
}

bool IntervalConcept::operator==(const IntervalConcept& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Up: return lo == o.lo;
    case Kind::Down: return hi == o.hi;
    case Kind::Closed: return lo == o.lo && hi == o.hi;
  }
  return false;
}

bool IntervalConcept::operator<(const IntervalConcept& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case Kind::Up: return lo < o.lo;
    case Kind::Down: return hi < o.hi;
    case Kind::Closed:
      if (!(lo == o.lo)) return lo < o.lo;
      return hi < o.hi;
  }
  return false;
}

Concept Concept::top(Sort s) {
  Concept c;
  c.kind = Kind::Top;
  c.sort = s;
  return c;
}

Concept Concept::bottom(Sort s) {
  Concept c;
  c.kind = Kind::Bottom;
  c.sort = s;
  return c;
}

Concept Concept::named(std::string n) {
  Concept c;
  c.kind = Kind::Name;
  c.name = std::move(n);
  return c;
}

Concept Concept::conj(Concept l, Concept r) {
  Concept c;
  c.kind = Kind::Conj;
  c.sort = l.sort;
  c.args.push_back(std::move(l));
  c.args.push_back(std::move(r));
  return c;
}

Concept Concept::exists(std::string role, std::vector<Concept> fillers) {
  Concept c;
  c.kind = Kind::Exists;
  c.name = std::move(role);
  c.args = std::move(fillers);
  return c;
}

Concept Concept::num(IntervalConcept i) {
  Concept c;
  c.kind = Kind::Interval;
  c.sort = Sort::Num;
  c.interval = std::move(i);
  return c;
}

bool Concept::operator==(const Concept& o) const {
  if (kind != o.kind || sort != o.sort) return false;
  switch (kind) {
    case Kind::Bottom:
    case Kind::Top: return true;
    case Kind::Name: return name == o.name;
    case Kind::Conj: return args == o.args;
    case Kind::Exists: return name == o.name && args == o.args;
    case Kind::Interval: return interval == o.interval;
  }
  return false;
}

Concept conj_all(std::vector<Concept> parts) {
  if (parts.empty()) return Concept::top();
  Concept acc = std::move(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) acc = Concept::conj(std::move(acc), std::move(parts[i]));
  return acc;
}

bool CBox::has_role(const std::string& role) const {
  return roles.count(role) > 0 || restriction(role) != nullptr;
}

const RoleRestriction* CBox::restriction(const std::string& role) const {
  for (const auto& a : axioms)
    if (const auto* r = std::get_if<RoleRestriction>(&a); r && r->role == role) return r;
  return nullptr;
}

RoleSig CBox::sig(const std::string& role) const {
  if (auto it = roles.find(role); it != roles.end()) return it->second;
  if (const auto* r = restriction(role)) {
    RoleSig s = sig(r->base);
    s.sorts.erase(s.sorts.begin() + (r->position - 1));
    return s;
  }
  throw Error("unknown role '" + role + "'");
}

namespace {

void collect_names(const Concept& c, std::set<std::string>& out) {
  if (c.kind == Concept::Kind::Name) out.insert(c.name);
  for (const auto& a : c.args) collect_names(a, out);
}

}  // namespace

std::vector<std::string> CBox::concept_names() const {
  std::set<std::string> names;
  for (const auto& a : axioms) {
    if (const auto* g = std::get_if<Gci>(&a)) {
      collect_names(g->lhs, names);
      collect_names(g->rhs, names);
    } else if (const auto* ri = std::get_if<RoleInclusion>(&a)) {
      if (ri->guard) collect_names(*ri->guard, names);
    } else {
      collect_names(std::get<RoleRestriction>(a).filler, names);
    }
  }
  for (const auto& q : queries) {
    collect_names(q.lhs, names);
    collect_names(q.rhs, names);
  }
  for (const auto& l : split) {
    collect_names(l.lhs, names);
    collect_names(l.rhs, names);
  }
  return {names.begin(), names.end()};
}

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"sub", "nsub", "equiv", "and", "exists", "top", "bot", "role", "decl",
                                           "o", "id", "guard", "restrict", "at", "to", "num", "up", "down",
                                           "concept"};
  return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return keywords().count(std::string(s)) == 0;
}

namespace {

enum class Tok : std::uint8_t { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

std::vector<Token> lex_line(std::string_view line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  auto loc = [&](size_t col) { return SourceLoc{lineno, static_cast<int>(col) + 1}; };
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t start = i;
    bool digit_next = i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1]));
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digit_next)) {
      ++i;
      while (i < line.size()) {
        char d = line[i];
        bool more = i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1]));
        if (std::isdigit(static_cast<unsigned char>(d)) || ((d == '/' || d == '.') && more))
          ++i;
        else
          break;
      }
      out.push_back({Tok::Number, std::string(line.substr(start, i - start)), loc(start)});
    } else if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), loc(start)});
    } else if (std::string_view("().,:[]=?").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Tok::Punct, std::string(1, c), loc(start)});
    } else {
      throw ParseError(loc(start), std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", loc(line.size())});
  return out;
}

Rational parse_rational(const Token& t) {
  const std::string& s = t.text;
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) throw ParseError(t.loc, "zero denominator");
      return Rational(std::stoll(s.substr(0, slash)), den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string frac = s.substr(dot + 1);
      if (frac.size() > 15) throw ParseError(t.loc, "too many decimal digits");
      long long den = 1;
      for (size_t k = 0; k < frac.size(); ++k) den *= 10;
      bool neg = !s.empty() && s[0] == '-';
      long long whole = std::stoll(s.substr(0, dot));
      long long f = std::stoll(frac);
      Rational q(std::llabs(whole) * den + f, den);
      return neg ? -q : q;
    }
    return Rational(std::stoll(s));
  } catch (const std::out_of_range&) {
    throw ParseError(t.loc, "number out of range: " + s);
  }
}

std::optional<Sort> infer_sort(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Name:
    case Concept::Kind::Exists: return Sort::Concept;
    case Concept::Kind::Interval: return Sort::Num;
    case Concept::Kind::Bottom:
    case Concept::Kind::Top: return std::nullopt;
    case Concept::Kind::Conj: {
      auto l = infer_sort(c.args[0]);
      return l ? l : infer_sort(c.args[1]);
    }
  }
  return std::nullopt;
}

void assign_sort(Concept& c, Sort s, SourceLoc loc) {
  switch (c.kind) {
    case Concept::Kind::Bottom:
    case Concept::Kind::Top: c.sort = s; return;
    case Concept::Kind::Name:
    case Concept::Kind::Exists:
      if (s != Sort::Concept)
        throw ParseError(loc, "sort mismatch: '" + render(c) + "' is a concept where a num concept is expected");
      return;
    case Concept::Kind::Interval:
      if (s != Sort::Num)
        throw ParseError(loc, "sort mismatch: interval '" + render(c) + "' where a concept is expected");
      return;
    case Concept::Kind::Conj:
      if (s == Sort::Num) throw ParseError(loc, "conjunction of num concepts is not supported");
      c.sort = s;
      assign_sort(c.args[0], s, loc);
      assign_sort(c.args[1], s, loc);
      return;
  }
}

class Parser {
 public:
  explicit Parser(CBox& box) : box_(box) {}

  void decl_pass(const std::vector<Token>& toks) {
    reset(toks);
    if (!at_word("decl")) return;
    next();
    expect_word("role");
    Token name = expect_ident("role name");
    expect_punct(":");
    RoleSig sig;
    if (peek().kind == Tok::Number) {
      Token n = next();
      int arity = 0;
      try {
        arity = std::stoi(n.text);
      } catch (...) {
        throw ParseError(n.loc, "bad arity");
      }
      if (arity < 2 || arity > 16) throw ParseError(n.loc, "role arity must be between 2 and 16");
      sig.sorts.assign(arity, Sort::Concept);
    } else {
      expect_punct("(");
      for (;;) {
        Token s = next();
        if (s.kind == Tok::Ident && s.text == "concept")
          sig.sorts.push_back(Sort::Concept);
        else if (s.kind == Tok::Ident && s.text == "num")
          sig.sorts.push_back(Sort::Num);
        else
          throw ParseError(s.loc, "expected 'concept' or 'num'");
        if (at_punct(",")) {
          next();
          continue;
        }
        expect_punct(")");
        break;
      }
      if (sig.sorts.size() < 2) throw ParseError(name.loc, "role arity must be at least 2");
      if (sig.sorts[0] != Sort::Concept) throw ParseError(name.loc, "the subject position of a role must be concept");
    }
    expect_end();
    if (box_.roles.count(name.text)) throw ParseError(name.loc, "role '" + name.text + "' declared twice");
    box_.roles[name.text] = sig;
  }

  void statement(const std::vector<Token>& toks) {
    reset(toks);
    if (peek().kind == Tok::End) return;
    if (at_word("decl")) return;  // handled in the first pass
    int line = peek().loc.line;
    if (at_word("role")) {
      next();
      role_statement(line);
      return;
    }
    if (at_punct("?")) {
      next();
      Concept l = concept_expr();
      expect_word("sub");
      Concept r = concept_expr();
      expect_end();
      unify_pair(l, r, toks[0].loc);
      box_.queries.push_back({std::move(l), std::move(r)});
      return;
    }
    if (peek().kind == Tok::Ident && (peek().text == "A" || peek().text == "B") && toks.size() > 1 &&
        toks[1].kind == Tok::Punct && toks[1].text == ":") {
      Side side = peek().text == "A" ? Side::A : Side::B;
      next();
      next();
      Concept l = concept_expr();
      bool neg = false;
      if (at_word("nsub")) {
        neg = true;
        next();
      } else {
        expect_word("sub");
      }
      Concept r = concept_expr();
      expect_end();
      unify_pair(l, r, toks[0].loc);
      box_.split.push_back({side, std::move(l), std::move(r), neg});
      return;
    }
    Concept l = concept_expr();
    bool equiv = false;
    if (at_word("equiv")) {
      equiv = true;
      next();
    } else {
      expect_word("sub");
    }
    Concept r = concept_expr();
    expect_end();
    unify_pair(l, r, toks[0].loc);
    add_axiom(Gci{l, r}, line);
    if (equiv) add_axiom(Gci{r, l}, line);
  }

  Concept standalone_concept(const std::vector<Token>& toks) {
    reset(toks);
    Concept c = concept_expr();
    expect_end();
    assign_sort(c, infer_sort(c).value_or(Sort::Concept), toks[0].loc);
    return c;
  }

 private:
  void add_axiom(Axiom a, int line) {
    box_.axioms.push_back(std::move(a));
    box_.axiom_lines.push_back(line);
  }

  void reset(const std::vector<Token>& toks) {
    toks_ = &toks;
    pos_ = 0;
  }

  const Token& peek() const { return (*toks_)[pos_]; }
  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(t.loc, "expected " + what + ", got " + got);
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("'" + std::string(w) + "'");
    next();
  }
  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("end of statement");
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail(what);
    return next();
  }

  void unify_pair(Concept& l, Concept& r, SourceLoc loc) {
    auto ls = infer_sort(l), rs = infer_sort(r);
    if (ls && rs && *ls != *rs) throw ParseError(loc, "sort mismatch between the two sides");
    Sort s = ls ? *ls : rs.value_or(Sort::Concept);
    assign_sort(l, s, loc);
    assign_sort(r, s, loc);
  }

  RoleSig role_sig(const Token& name) const {
    try {
      return box_.sig(name.text);
    } catch (const Error&) {
      throw ParseError(name.loc, "unknown role '" + name.text + "'");
    }
  }

  // Looks up a role, declaring it implicitly with `fallback` when unknown.
  RoleSig use_role(const Token& name, const RoleSig& fallback) {
    if (box_.has_role(name.text)) return role_sig(name);
    box_.roles[name.text] = fallback;
    return fallback;
  }

  static RoleSig binary() { return RoleSig{{Sort::Concept, Sort::Concept}}; }

  void role_statement(int line) {
    Token head = expect_ident("role name");
    if (at_punct("=")) {
      next();
      expect_word("restrict");
      Token base = expect_ident("role name");
      expect_word("at");
      if (peek().kind != Tok::Number) fail("position");
      Token pos_tok = next();
      int pos = 0;
      try {
        pos = std::stoi(pos_tok.text);
      } catch (...) {
        throw ParseError(pos_tok.loc, "bad position");
      }
      expect_word("to");
      Concept filler = concept_expr();
      expect_end();
      if (box_.has_role(head.text)) throw ParseError(head.loc, "role '" + head.text + "' already declared");
      RoleSig bs = role_sig(base);
      if (bs.arity() < 3) throw ParseError(base.loc, "restriction needs a role of arity at least 3");
      if (pos < 2 || pos > bs.arity())
        throw ParseError(pos_tok.loc, "position must be between 2 and " + std::to_string(bs.arity()));
      Sort ps = bs.sorts[pos - 1];
      if (auto fs = infer_sort(filler); fs && *fs != ps)
        throw ParseError(pos_tok.loc, "filler sort does not match position sort");
      assign_sort(filler, ps, pos_tok.loc);
      add_axiom(RoleRestriction{head.text, base.text, pos, std::move(filler)}, line);
      return;
    }

    RoleInclusion ri;
    ri.head = head.text;
    std::vector<Token> tail;
    if (at_word("o")) {
      next();
      if (at_punct("(")) {
        next();
        ri.tuple = true;
        for (;;) {
          tail.push_back(expect_ident("role name"));
          if (at_punct(",")) {
            next();
            continue;
          }
          expect_punct(")");
          break;
        }
      } else {
        tail.push_back(expect_ident("role name"));
        while (at_word("o")) {
          next();
          tail.push_back(expect_ident("role name"));
        }
      }
    }
    for (const auto& t : tail) ri.tail.push_back(t.text);
    expect_word("sub");
    std::optional<Token> rhs;
    if (at_word("id")) {
      next();
    } else {
      rhs = expect_ident("role name or 'id'");
      ri.rhs = rhs->text;
    }
    if (at_word("guard")) {
      next();
      ri.guard = concept_expr();
    }
    expect_end();
    SourceLoc loc = head.loc;

    // Positions the guard may constrain.
    std::vector<Sort> fillers;
    if (tail.empty()) {
      RoleSig hs = use_role(head, binary());
      if (!rhs) throw ParseError(loc, "'id' needs a role composition on the left");
      RoleSig rs = use_role(*rhs, hs);
      if (!(rs == hs)) throw ParseError(rhs->loc, "role inclusion between roles of different signatures");
      fillers.assign(hs.sorts.begin() + 1, hs.sorts.end());
    } else if (!ri.tuple && tail.size() > 1) {
      use_role(head, binary());
      if (!(role_sig(head) == binary())) throw ParseError(head.loc, "role chains of length > 2 need binary roles");
      for (const auto& t : tail)
        if (!(use_role(t, binary()) == binary())) throw ParseError(t.loc, "role chains of length > 2 need binary roles");
      if (rhs && !(use_role(*rhs, binary()) == binary())) throw ParseError(rhs->loc, "chain target must be binary");
      fillers = {Sort::Concept};
    } else {
      std::vector<RoleSig> inner;
      for (const auto& t : tail) inner.push_back(use_role(t, binary()));
      RoleSig hs = use_role(head, RoleSig{std::vector<Sort>(tail.size() + 1, Sort::Concept)});
      if (hs.arity() != static_cast<int>(tail.size()) + 1)
        throw ParseError(head.loc, "role '" + head.text + "' has arity " + std::to_string(hs.arity()) +
                                       " but is composed with " + std::to_string(tail.size()) + " roles");
      for (size_t k = 0; k < tail.size(); ++k)
        if (hs.sorts[k + 1] != Sort::Concept || inner[k].sorts[0] != Sort::Concept)
          throw ParseError(tail[k].loc, "composition through a num position");
      RoleSig expect{{Sort::Concept}};
      for (const auto& s : inner) expect.sorts.insert(expect.sorts.end(), s.sorts.begin() + 1, s.sorts.end());
      if (rhs) {
        RoleSig rs = use_role(*rhs, expect);
        if (!(rs == expect)) throw ParseError(rhs->loc, "signature of '" + rhs->text + "' does not match the composition");
        fillers.assign(expect.sorts.begin() + 1, expect.sorts.end());
      } else {
        for (size_t k = 0; k < tail.size(); ++k)
          if (!(inner[k] == binary())) throw ParseError(tail[k].loc, "'id' needs binary inner roles");
        fillers = {Sort::Concept};
      }
    }
    if (ri.guard) {
      Sort gs = infer_sort(*ri.guard).value_or(Sort::Concept);
      if (std::find(fillers.begin(), fillers.end(), gs) == fillers.end())
        throw ParseError(loc, "guard sort matches no filler position");
      assign_sort(*ri.guard, gs, loc);
    }
    add_axiom(std::move(ri), line);
  }

  Concept concept_expr() {
    Concept c = primary();
    while (at_word("and")) {
      SourceLoc loc = next().loc;
      Concept r = primary();
      auto ls = infer_sort(c), rs = infer_sort(r);
      if (ls && rs && *ls != *rs) throw ParseError(loc, "sort mismatch in conjunction");
      if (ls == Sort::Num || rs == Sort::Num) throw ParseError(loc, "conjunction of num concepts is not supported");
      c = Concept::conj(std::move(c), std::move(r));
    }
    return c;
  }

  Endpoint endpoint() {
    if (peek().kind == Tok::Number) return Endpoint{parse_rational(next())};
    Token p = expect_ident("number or parameter");
    return Endpoint{p.text};
  }

  Concept primary() {
    const Token& t = peek();
    if (at_punct("(")) {
      next();
      Concept c = concept_expr();
      expect_punct(")");
      return c;
    }
    if (t.kind != Tok::Ident) fail("concept");
    if (t.text == "top") {
      next();
      return Concept::top();
    }
    if (t.text == "bot") {
      next();
      return Concept::bottom();
    }
    if (t.text == "num") {
      next();
      if (at_word("up")) {
        next();
        return Concept::num(IntervalConcept::up(endpoint()));
      }
      if (at_word("down")) {
        next();
        return Concept::num(IntervalConcept::down(endpoint()));
      }
      SourceLoc loc = peek().loc;
      expect_punct("[");
      Endpoint lo = endpoint();
      expect_punct(",");
      Endpoint hi = endpoint();
      expect_punct("]");
      if (lo.is_literal() && hi.is_literal() && hi.literal() < lo.literal())
        throw ParseError(loc, "empty interval: lower bound exceeds upper bound");
      return Concept::num(IntervalConcept::closed(std::move(lo), std::move(hi)));
    }
    if (t.text == "exists") {
      next();
      Token role = expect_ident("role name");
      expect_punct(".");
      std::vector<Concept> args;
      if (at_punct("(")) {
        next();
        for (;;) {
          args.push_back(concept_expr());
          if (at_punct(",")) {
            next();
            continue;
          }
          expect_punct(")");
          break;
        }
      } else {
        args.push_back(primary());
      }
      RoleSig fallback{{Sort::Concept}};
      for (const auto& a : args) fallback.sorts.push_back(infer_sort(a).value_or(Sort::Concept));
      RoleSig sig = use_role(role, fallback);
      if (sig.arity() != static_cast<int>(args.size()) + 1)
        throw ParseError(role.loc, "arity mismatch: role '" + role.text + "' takes " +
                                       std::to_string(sig.arity() - 1) + " argument(s), got " +
                                       std::to_string(args.size()));
      for (size_t k = 0; k < args.size(); ++k) {
        auto s = infer_sort(args[k]);
        if (s && *s != sig.sorts[k + 1])
          throw ParseError(role.loc, "sort mismatch in argument " + std::to_string(k + 1) + " of '" + role.text + "'");
        assign_sort(args[k], sig.sorts[k + 1], role.loc);
      }
      return Concept::exists(role.text, std::move(args));
    }
    if (keywords().count(t.text)) fail("concept");
    return Concept::named(next().text);
  }

  CBox& box_;
  const std::vector<Token>* toks_ = nullptr;
  size_t pos_ = 0;
};

std::vector<std::vector<Token>> lex_all(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int lineno = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++lineno;
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(lex_line(line, lineno));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

CBox parse_cbox(std::string_view text) {
  CBox box;
  auto lines = lex_all(text);
  Parser p(box);
  for (const auto& toks : lines) p.decl_pass(toks);
  for (const auto& toks : lines) p.statement(toks);
  return box;
}

CBox parse_cbox_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cbox(ss.str());
}

Concept parse_concept(const CBox& cbox, std::string_view text) {
  CBox scratch = cbox;
  Parser p(scratch);
  auto toks = lex_line(text, 1);
  return p.standalone_concept(toks);
}

namespace {

std::string render_filler(const Concept& c) {
  std::string s = render(c);
  return c.kind == Concept::Kind::Conj ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Bottom: return "bot";
    case Concept::Kind::Top: return "top";
    case Concept::Kind::Name: return c.name;
    case Concept::Kind::Conj: return render(c.args[0]) + " and " + render_filler(c.args[1]);
    case Concept::Kind::Exists: {
      std::string s = "exists " + c.name + " . ";
      if (c.args.size() == 1) return s + render_filler(c.args[0]);
      s += "(";
      for (size_t i = 0; i < c.args.size(); ++i) s += (i ? ", " : "") + render(c.args[i]);
      return s + ")";
    }
    case Concept::Kind::Interval: {
      const auto& i = c.interval;
      switch (i.kind) {
        case IntervalConcept::Kind::Up: return "num up " + to_string(i.lo);
        case IntervalConcept::Kind::Down: return "num down " + to_string(i.hi);
        case IntervalConcept::Kind::Closed: return "num [" + to_string(i.lo) + ", " + to_string(i.hi) + "]";
      }
    }
  }
  return "";
}

std::string render(const Axiom& a) {
  if (const auto* g = std::get_if<Gci>(&a)) return render(g->lhs) + " sub " + render(g->rhs);
  if (const auto* r = std::get_if<RoleRestriction>(&a))
    return "role " + r->role + " = restrict " + r->base + " at " + std::to_string(r->position) + " to " +
           render(r->filler);
  const auto& ri = std::get<RoleInclusion>(a);
  std::string s = "role " + ri.head;
  if (!ri.tail.empty()) {
    s += " o ";
    if (ri.tuple) {
      s += "(";
      for (size_t i = 0; i < ri.tail.size(); ++i) s += (i ? ", " : "") + ri.tail[i];
      s += ")";
    } else {
      for (size_t i = 0; i < ri.tail.size(); ++i) s += (i ? " o " : "") + ri.tail[i];
    }
  }
  s += " sub " + (ri.rhs ? *ri.rhs : std::string("id"));
  if (ri.guard) s += " guard " + render(*ri.guard);
  return s;
}

std::string render(const CBox& cbox) {
  std::string out;
  for (const auto& [name, sig] : cbox.roles) {
    out += "decl role " + name + " : ";
    bool plain = std::all_of(sig.sorts.begin(), sig.sorts.end(), [](Sort s) { return s == Sort::Concept; });
    if (plain) {
      out += std::to_string(sig.arity());
    } else {
      out += "(";
      for (size_t i = 0; i < sig.sorts.size(); ++i) out += (i ? ", " : "") + std::string(to_string(sig.sorts[i]));
      out += ")";
    }
    out += "\n";
  }
  for (const auto& a : cbox.axioms) out += render(a) + "\n";
  for (const auto& q : cbox.queries) out += "? " + render(q.lhs) + " sub " + render(q.rhs) + "\n";
  for (const auto& l : cbox.split)
    out += std::string(l.side == Side::A ? "A: " : "B: ") + render(l.lhs) + (l.negated ? " nsub " : " sub ") +
           render(l.rhs) + "\n";
  return out;
}

}  // namespace loctame
