#include "loctame/horn.hpp"

#include <sstream>
#include <unordered_map>

namespace loctame {

ConstId HornProblem::add_const(std::string name, Sort s) {
  names.push_back(std::move(name));
  sorts.push_back(s);
  return static_cast<ConstId>(names.size() - 1);
}

std::uint32_t HornProblem::origin(const std::string& label) {
  for (size_t i = 0; i < origins.size(); ++i)
    if (origins[i] == label) return static_cast<std::uint32_t>(i);
  origins.push_back(label);
  return static_cast<std::uint32_t>(origins.size() - 1);
}

void HornProblem::add_fact(Atom a, std::uint32_t origin) {
  fact_origins.resize(facts.size(), 0);
  facts.push_back(a);
  fact_origins.push_back(origin);
}

size_t HornProblem::literal_occurrences() const {
  size_t n = 0;
  for (const auto& c : clauses) n += c.premises.size();
  return n;
}

std::string dump(const HornProblem& p) {
  std::string out;
  auto atom = [&](const Atom& a, const char* sep) { return p.names[a.lhs] + sep + p.names[a.rhs]; };
  for (const auto& f : p.facts) out += "fact " + atom(f, " <= ") + "\n";
  for (const auto& c : p.clauses) {
    out += "clause ";
    for (size_t i = 0; i < c.premises.size(); ++i) out += (i ? ", " : "") + atom(c.premises[i], "<=");
    out += " -> " + (c.conclusion ? atom(*c.conclusion, "<=") : std::string("bot"));
    if (c.origin != 0 && c.origin < p.origins.size()) out += "  # " + p.origins[c.origin];
    out += "\n";
  }
  if (p.goal) out += "goal " + atom(*p.goal, " <= ") + "\n";
  return out;
}

namespace {

class DumpReader {
 public:
  explicit DumpReader(HornProblem& p) : p_(p) {}

  ConstId name(const std::string& n) {
    auto it = ids_.find(n);
    if (it != ids_.end()) return it->second;
    ConstId id = p_.add_const(n);
    ids_.emplace(n, id);
    return id;
  }

  // Parses `x <= y` starting at pos; tokens may be glued to `<=`.
  Atom atom(const std::string& text, int line) {
    auto le = text.find("<=");
    if (le == std::string::npos) throw ParseError({line, 1}, "expected an atom 'a <= b', got '" + text + "'");
    std::string l = trim(text.substr(0, le)), r = trim(text.substr(le + 2));
    if (l.empty() || r.empty() || l.find(' ') != std::string::npos || r.find(' ') != std::string::npos)
      throw ParseError({line, 1}, "malformed atom '" + text + "'");
    return {name(l), name(r)};
  }

  static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }

 private:
  HornProblem& p_;
  std::unordered_map<std::string, ConstId> ids_;
};

}  // namespace

HornProblem parse_dump(std::string_view text) {
  HornProblem p;
  DumpReader rd(p);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = DumpReader::trim(line);
    if (line.empty()) continue;
    auto sp = line.find(' ');
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (kw == "fact") {
      p.facts.push_back(rd.atom(rest, lineno));
    } else if (kw == "goal") {
      if (p.goal) throw ParseError({lineno, 1}, "second goal");
      p.goal = rd.atom(rest, lineno);
    } else if (kw == "clause") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError({lineno, 1}, "clause without '->'");
      HornClause c;
      c.origin = p.origin("input");
      std::string prem = rest.substr(0, arrow);
      std::string concl = DumpReader::trim(rest.substr(arrow + 2));
      std::istringstream ps(prem);
      std::string part;
      while (std::getline(ps, part, ','))
        if (!DumpReader::trim(part).empty()) c.premises.push_back(rd.atom(part, lineno));
      if (concl != "bot") c.conclusion = rd.atom(concl, lineno);
      p.clauses.push_back(std::move(c));
    } else {
      throw ParseError({lineno, 1}, "unknown directive '" + kw + "'");
    }
  }
  return p;
}

}  // namespace loctame
