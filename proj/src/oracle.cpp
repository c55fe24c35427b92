#include "loctame/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace loctame {

// ---------------------------------------------------------------------------
// completion

bool SubsumptionSet::subsumes(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto it = subsumers.find(a);
  if (it == subsumers.end()) it = subsumers.find("top");
  if (it == subsumers.end()) return b == "top";
  return it->second.count(b) > 0 || it->second.count("bot") > 0;
}

namespace {

using K = Concept::Kind;

// Basic concepts are indexed 0 = top, 1 = bot, then names.
class Completion {
 public:
  explicit Completion(const CBox& box) {
    index("top");
    index("bot");
    for (const auto& n : box.concept_names()) index(n);
    for (const auto& [r, sig] : box.roles) role(r);
    for (const auto& ax : box.axioms) {
      if (const auto* g = std::get_if<Gci>(&ax)) {
        add_gci(*g);
      } else if (const auto* ri = std::get_if<RoleInclusion>(&ax)) {
        if (ri->guard || !ri->rhs || ri->tail.size() > 1)
          throw UnsupportedConstruct("completion needs normalized binary EL+ role inclusions");
        if (ri->tail.empty())
          sub_.push_back({role(ri->head), role(*ri->rhs)});
        else
          chain_.push_back({role(ri->head), role(ri->tail[0]), role(*ri->rhs)});
      } else {
        throw UnsupportedConstruct("completion does not support role restrictions");
      }
    }
  }

  SubsumptionSet run() {
    size_t n = names_.size();
    S_.assign(n, std::vector<char>(n, 0));
    R_.assign(roles_.size(), {});
    for (size_t c = 0; c < n; ++c) {
      S_[c][c] = 1;
      S_[c][0] = 1;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t c = 0; c < n; ++c) {
        for (const auto& [a, b] : simple_)
          if (S_[c][a] && mark(S_[c][b])) changed = true;
        for (const auto& [a1, a2, b] : conj_)
          if (S_[c][a1] && S_[c][a2] && mark(S_[c][b])) changed = true;
        for (const auto& [a, r, b] : right_)
          if (S_[c][a] && R_[r].insert({c, b}).second) changed = true;
      }
      for (size_t r = 0; r < roles_.size(); ++r) {
        std::vector<std::pair<size_t, size_t>> edges(R_[r].begin(), R_[r].end());
        for (const auto& [c, d] : edges) {
          for (const auto& [rr, a, b] : left_)
            if (rr == r && S_[d][a] && mark(S_[c][b])) changed = true;
          if (S_[d][1] && mark(S_[c][1])) changed = true;
          for (const auto& [from, to] : sub_)
            if (from == r && R_[to].insert({c, d}).second) changed = true;
          for (const auto& [r1, r2, r3] : chain_) {
            if (r1 != r) continue;
            std::vector<std::pair<size_t, size_t>> next(R_[r2].begin(), R_[r2].end());
            for (const auto& [d2, e] : next)
              if (d2 == d && R_[r3].insert({c, e}).second) changed = true;
          }
        }
      }
    }
    SubsumptionSet out;
    for (size_t c = 0; c < n; ++c) {
      if (c == 1) continue;
      auto& s = out.subsumers[names_[c]];
      for (size_t d = 0; d < n; ++d)
        if (S_[c][d] || S_[c][1]) s.insert(names_[d]);
    }
    return out;
  }

 private:
  static bool mark(char& x) {
    if (x) return false;
    x = 1;
    return true;
  }

  size_t index(const std::string& n) {
    auto [it, fresh] = ids_.emplace(n, names_.size());
    if (fresh) names_.push_back(n);
    return it->second;
  }

  size_t role(const std::string& r) {
    auto [it, fresh] = role_ids_.emplace(r, roles_.size());
    if (fresh) roles_.push_back(r);
    return it->second;
  }

  size_t basic(const Concept& c) {
    switch (c.kind) {
      case K::Top: return 0;
      case K::Bottom: return 1;
      case K::Name: return index(c.name);
      default: throw UnsupportedConstruct("completion needs normalized GCIs: " + render(c));
    }
  }

  void add_gci(const Gci& g) {
    if (!is_normal_gci(g)) throw UnsupportedConstruct("GCI is not normalized: " + render(Axiom{g}));
    const Concept& l = g.lhs;
    const Concept& r = g.rhs;
    if (l.kind == K::Conj) {
      conj_.push_back({basic(l.args[0]), basic(l.args[1]), basic(r)});
    } else if (l.kind == K::Exists) {
      left_.push_back({role(l.name), basic(l.args[0]), basic(r)});
    } else if (r.kind == K::Exists) {
      right_.push_back({basic(l), role(r.name), basic(r.args[0])});
    } else {
      simple_.push_back({basic(l), basic(r)});
    }
  }

  std::vector<std::string> names_, roles_;
  std::unordered_map<std::string, size_t> ids_, role_ids_;
  std::vector<std::pair<size_t, size_t>> simple_, sub_;
  std::vector<std::tuple<size_t, size_t, size_t>> conj_, right_, left_, chain_;
  std::vector<std::vector<char>> S_;
  std::vector<std::set<std::pair<size_t, size_t>>> R_;
};

}  // namespace

SubsumptionSet completion_classify(const NormalizedCBox& n) { return Completion(n.cbox).run(); }

bool completion_subsumes(const CBox& cbox, const Concept& lhs, const Concept& rhs) {
  CBox box = cbox;
  auto names = box.concept_names();
  auto fresh = [&](const std::string& base) {
    std::string n = base;
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "_";
    names.push_back(n);
    return n;
  };
  std::string x = fresh("__query_lhs"), y = fresh("__query_rhs");
  box.axioms.push_back(Gci{Concept::named(x), lhs});
  box.axioms.push_back(Gci{lhs, Concept::named(x)});
  box.axioms.push_back(Gci{Concept::named(y), rhs});
  box.axioms.push_back(Gci{rhs, Concept::named(y)});
  box.queries.clear();
  box.axiom_lines.clear();
  return completion_classify(normalize(box)).subsumes(x, y);
}

// ---------------------------------------------------------------------------
// finite interpretations

std::string Interpretation::show() const {
  std::ostringstream out;
  out << "domain {0.." << size - 1 << "}\n";
  for (const auto& [n, ext] : concepts) {
    out << n << " = {";
    bool first = true;
    for (int e : ext) out << (first ? "" : ", ") << e, first = false;
    out << "}\n";
  }
  for (const auto& [r, ext] : roles) {
    out << r << " = {";
    bool first = true;
    for (const auto& t : ext) {
      out << (first ? "(" : ", (");
      for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ")";
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

std::set<std::vector<int>> role_extension(const CBox& cbox, const Interpretation& m, const std::string& role) {
  if (const RoleRestriction* rr = cbox.restriction(role)) {
    std::set<int> filler = extension(cbox, m, rr->filler);
    std::set<std::vector<int>> out;
    for (auto t : role_extension(cbox, m, rr->base)) {
      if (!filler.count(t[rr->position - 1])) continue;
      t.erase(t.begin() + (rr->position - 1));
      out.insert(std::move(t));
    }
    return out;
  }
  auto it = m.roles.find(role);
  return it == m.roles.end() ? std::set<std::vector<int>>{} : it->second;
}

std::set<int> extension(const CBox& cbox, const Interpretation& m, const Concept& c) {
  std::set<int> all;
  for (int e = 0; e < m.size; ++e) all.insert(e);
  switch (c.kind) {
    case K::Top: return all;
    case K::Bottom: return {};
    case K::Name: {
      auto it = m.concepts.find(c.name);
      return it == m.concepts.end() ? std::set<int>{} : it->second;
    }
    case K::Conj: {
      auto a = extension(cbox, m, c.args[0]);
      auto b = extension(cbox, m, c.args[1]);
      std::set<int> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      return out;
    }
    case K::Exists: {
      std::vector<std::set<int>> fillers;
      for (const auto& a : c.args) fillers.push_back(extension(cbox, m, a));
      std::set<int> out;
      for (const auto& t : role_extension(cbox, m, c.name)) {
        bool ok = t.size() == fillers.size() + 1;
        for (size_t i = 0; ok && i < fillers.size(); ++i) ok = fillers[i].count(t[i + 1]) > 0;
        if (ok) out.insert(t[0]);
      }
      return out;
    }
    case K::Interval: throw UnsupportedConstruct("interval concepts have no finite interpretation here");
  }
  return {};
}

namespace {

bool includes(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool role_axiom_holds(const CBox& cbox, const Interpretation& m, const RoleInclusion& ri) {
  std::set<int> guard;
  if (ri.guard) guard = extension(cbox, m, *ri.guard);
  auto guarded = [&](const std::vector<int>& els) {
    if (!ri.guard) return true;
    for (int e : els)
      if (!guard.count(e)) return false;
    return true;
  };
  auto target = [&]() { return ri.rhs ? role_extension(cbox, m, *ri.rhs) : std::set<std::vector<int>>{}; };
  auto head = role_extension(cbox, m, ri.head);
  if (ri.tail.empty()) {
    auto rhs = target();
    for (const auto& t : head)
      if (guarded({t.begin() + 1, t.end()}) && !rhs.count(t)) return false;
    return true;
  }
  if (!ri.tuple) {
    // binary chain x r1 y1 r2 y2 … rk yk
    std::vector<std::set<std::vector<int>>> steps;
    for (const auto& s : ri.tail) steps.push_back(role_extension(cbox, m, s));
    auto rhs = target();
    std::function<bool(int, int, size_t, std::vector<int>&)> walk = [&](int x, int y, size_t i,
                                                                       std::vector<int>& seen) -> bool {
      if (i == steps.size()) {
        if (!guarded(seen)) return true;
        if (ri.rhs) return rhs.count({x, y}) > 0;
        return x == y;
      }
      for (const auto& t : steps[i]) {
        if (t[0] != y) continue;
        seen.push_back(t[1]);
        bool ok = walk(x, t[1], i + 1, seen);
        seen.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    for (const auto& t : head) {
      std::vector<int> seen{t[1]};
      if (!walk(t[0], t[1], 0, seen)) return false;
    }
    return true;
  }
  // head(x, y1..yn), s_i(y_i, z̄_i)
  size_t n = ri.tail.size();
  std::vector<std::set<std::vector<int>>> inner;
  for (const auto& s : ri.tail) inner.push_back(role_extension(cbox, m, s));
  auto rhs = target();
  for (const auto& t : head) {
    if (t.size() != n + 1) return false;
    std::vector<std::vector<std::vector<int>>> cands(n);
    for (size_t i = 0; i < n; ++i)
      for (const auto& u : inner[i])
        if (u[0] == t[i + 1]) cands[i].emplace_back(u.begin() + 1, u.end());
    bool empty = std::any_of(cands.begin(), cands.end(), [](const auto& c) { return c.empty(); });
    if (empty) continue;
    std::vector<size_t> pick(n, 0);
    for (;;) {
      std::vector<int> els(t.begin() + 1, t.end()), out{t[0]};
      bool eq = false;
      for (size_t i = 0; i < n; ++i) {
        const auto& z = cands[i][pick[i]];
        els.insert(els.end(), z.begin(), z.end());
        out.insert(out.end(), z.begin(), z.end());
        if (z.size() == 1 && z[0] == t[0]) eq = true;
      }
      if (guarded(els)) {
        if (ri.rhs && !rhs.count(out)) return false;
        if (!ri.rhs && !eq) return false;
      }
      size_t i = 0;
      while (i < n && ++pick[i] == cands[i].size()) pick[i++] = 0;
      if (i == n) break;
    }
  }
  return true;
}

}  // namespace

bool is_model(const CBox& cbox, const Interpretation& m) {
  for (const auto& ax : cbox.axioms) {
    if (const auto* g = std::get_if<Gci>(&ax)) {
      if (!includes(extension(cbox, m, g->lhs), extension(cbox, m, g->rhs))) return false;
    } else if (const auto* ri = std::get_if<RoleInclusion>(&ax)) {
      if (!role_axiom_holds(cbox, m, *ri)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DPLL

int Dpll::new_var() {
  assign_.push_back(0);
  watch_.emplace_back();
  watch_.emplace_back();
  return static_cast<int>(assign_.size()) - 1;
}

int Dpll::lit_value(int lit) const {
  int v = assign_[std::abs(lit) - 1];
  return lit > 0 ? v : -v;
}

void Dpll::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i] == -lits[j]) return;  // tautology
  if (lits.empty()) {
    conflict_ = true;
    return;
  }
  if (lits.size() == 1) {
    pending_units_.push_back(lits[0]);
    return;
  }
  int id = static_cast<int>(clauses_.size());
  watches(lits[0]).push_back(id);
  watches(lits[1]).push_back(id);
  clauses_.push_back(std::move(lits));
}

bool Dpll::assign(int lit, int) {
  int v = lit_value(lit);
  if (v > 0) return true;
  if (v < 0) return false;
  assign_[std::abs(lit) - 1] = lit > 0 ? 1 : -1;
  trail_.push_back(lit);
  return true;
}

// Two watched literals per clause; a clause watched by lit is visited when
// lit becomes false.
bool Dpll::propagate() {
  while (qhead_ < trail_.size()) {
    int falsified = -trail_[qhead_++];
    auto& ws = watches(falsified);
    for (size_t i = 0; i < ws.size();) {
      auto& c = clauses_[ws[i]];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value(c[0]) > 0) {
        ++i;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches(c[1]).push_back(ws[i]);
          ws[i] = ws.back();
          ws.pop_back();
          moved = true;
          break;
        }
      }
      if (moved) continue;
      if (!assign(c[0], ws[i])) return false;
      ++i;
    }
  }
  return true;
}

void Dpll::undo_to(size_t trail_size) {
  while (trail_.size() > trail_size) {
    assign_[std::abs(trail_.back()) - 1] = 0;
    trail_.pop_back();
  }
  qhead_ = std::min(qhead_, trail_size);
}

bool Dpll::solve() {
  if (conflict_) return false;
  for (int u : pending_units_)
    if (!assign(u, -1)) return false;
  if (!propagate()) return false;
  // chronological backtracking over (trail size, decision literal, flipped)
  struct Decision {
    size_t trail;
    int lit;
    bool flipped;
  };
  std::vector<Decision> stack;
  size_t next = 0;
  for (;;) {
    while (next < assign_.size() && assign_[next] != 0) ++next;
    if (next == assign_.size()) return true;
    int lit = -static_cast<int>(next + 1);  // try false first
    stack.push_back({trail_.size(), lit, false});
    assign(lit, -1);
    while (!propagate()) {
      while (!stack.empty() && stack.back().flipped) stack.pop_back();
      if (stack.empty()) return false;
      Decision& d = stack.back();
      undo_to(d.trail);
      d.flipped = true;
      d.lit = -d.lit;
      assign(d.lit, -1);
      next = 0;
    }
  }
}

// ---------------------------------------------------------------------------
// bounded model search

namespace {

class Encoder {
 public:
  Encoder(const CBox& cbox, int size) : cbox_(cbox), n_(size) {
    true_ = sat_.new_var() + 1;
    sat_.add_clause({true_});
    for (const auto& [r, sig] : cbox.roles)
      for (Sort s : sig.sorts)
        if (s != Sort::Concept) throw UnsupportedConstruct("bounded model search has no numeric domain (role '" + r + "')");
    for (const auto& name : cbox.concept_names()) {
      auto& vs = names_[name];
      for (int e = 0; e < n_; ++e) vs.push_back(sat_.new_var() + 1);
    }
    for (const auto& [r, sig] : cbox.roles) {
      auto& m = roles_[r];
      for (const auto& t : tuples(sig.arity())) m.emplace(t, sat_.new_var() + 1);
    }
  }

  void axioms() {
    for (const auto& ax : cbox_.axioms) {
      if (const auto* g = std::get_if<Gci>(&ax)) {
        for (int e = 0; e < n_; ++e) sat_.add_clause({-lit(g->lhs, e), lit(g->rhs, e)});
      } else if (const auto* ri = std::get_if<RoleInclusion>(&ax)) {
        role_axiom(*ri);
      }
    }
  }

  void query(const Concept& lhs, const Concept& rhs) {
    sat_.add_clause({lit(lhs, 0)});
    sat_.add_clause({-lit(rhs, 0)});
  }

  bool solve() { return sat_.solve(); }

  Interpretation decode() {
    Interpretation m;
    m.size = n_;
    for (const auto& [name, vs] : names_) {
      auto& ext = m.concepts[name];
      for (int e = 0; e < n_; ++e)
        if (sat_.value(vs[e] - 1)) ext.insert(e);
    }
    for (const auto& [r, vs] : roles_) {
      auto& ext = m.roles[r];
      for (const auto& [t, v] : vs)
        if (sat_.value(v - 1)) ext.insert(t);
    }
    return m;
  }

 private:
  std::vector<std::vector<int>> tuples(int arity) const {
    std::vector<std::vector<int>> out;
    std::vector<int> t(arity, 0);
    for (;;) {
      out.push_back(t);
      int i = arity - 1;
      while (i >= 0 && ++t[i] == n_) t[i--] = 0;
      if (i < 0) break;
    }
    return out;
  }

  int fresh() { return sat_.new_var() + 1; }

  // Literal for r(t), following restrictions.
  int role_lit(const std::string& r, const std::vector<int>& t) {
    if (const RoleRestriction* rr = cbox_.restriction(r)) {
      auto key = std::make_pair(r, t);
      if (auto it = derived_.find(key); it != derived_.end()) return it->second;
      // r(t) ↔ ⋁_v base(t[v at position]) ∧ filler(v)
      std::vector<int> disj;
      for (int v = 0; v < n_; ++v) {
        std::vector<int> full = t;
        full.insert(full.begin() + (rr->position - 1), v);
        disj.push_back(conj({role_lit(rr->base, full), lit(rr->filler, v)}));
      }
      int x = disjunction(disj);
      derived_.emplace(key, x);
      return x;
    }
    return roles_.at(r).at(t);
  }

  int conj(const std::vector<int>& parts) {
    int x = fresh();
    std::vector<int> back{x};
    for (int p : parts) {
      sat_.add_clause({-x, p});
      back.push_back(-p);
    }
    sat_.add_clause(back);
    return x;
  }

  int disjunction(const std::vector<int>& parts) {
    int x = fresh();
    std::vector<int> fwd{-x};
    for (int p : parts) {
      sat_.add_clause({x, -p});
      fwd.push_back(p);
    }
    sat_.add_clause(fwd);
    return x;
  }

  // Literal equivalent to e ∈ c.
  int lit(const Concept& c, int e) {
    switch (c.kind) {
      case K::Top: return true_;
      case K::Bottom: return -true_;
      case K::Name: return names_.at(c.name)[e];
      case K::Interval: throw UnsupportedConstruct("bounded model search has no numeric domain");
      default: break;
    }
    std::string key = render(c) + "@" + std::to_string(e);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    int x;
    if (c.kind == K::Conj) {
      x = conj({lit(c.args[0], e), lit(c.args[1], e)});
    } else {
      std::vector<int> disj;
      RoleSig sig = cbox_.sig(c.name);
      for (const auto& rest : tuples(sig.arity() - 1)) {
        std::vector<int> t{e};
        t.insert(t.end(), rest.begin(), rest.end());
        std::vector<int> parts{role_lit(c.name, t)};
        for (size_t i = 0; i < c.args.size(); ++i) parts.push_back(lit(c.args[i], rest[i]));
        disj.push_back(conj(parts));
      }
      x = disjunction(disj);
    }
    cache_.emplace(std::move(key), x);
    return x;
  }

  void guard_lits(const RoleInclusion& ri, const std::vector<int>& els, std::vector<int>& clause) {
    if (!ri.guard) return;
    for (int e : els) clause.push_back(-lit(*ri.guard, e));
  }

  void role_axiom(const RoleInclusion& ri) {
    RoleSig hs = cbox_.sig(ri.head);
    if (ri.tail.empty()) {
      for (const auto& t : tuples(hs.arity())) {
        std::vector<int> cl{-role_lit(ri.head, t), role_lit(*ri.rhs, t)};
        guard_lits(ri, {t.begin() + 1, t.end()}, cl);
        sat_.add_clause(cl);
      }
      return;
    }
    if (!ri.tuple) {
      // x r1 y1 r2 y2 … → x s yk (or x = yk)
      size_t k = ri.tail.size() + 1;
      for (const auto& path : tuples(static_cast<int>(k) + 1)) {
        std::vector<int> cl{-role_lit(ri.head, {path[0], path[1]})};
        for (size_t i = 0; i < ri.tail.size(); ++i) cl.push_back(-role_lit(ri.tail[i], {path[i + 1], path[i + 2]}));
        guard_lits(ri, {path.begin() + 1, path.end()}, cl);
        if (ri.rhs) {
          cl.push_back(role_lit(*ri.rhs, {path[0], path.back()}));
        } else if (path[0] == path.back()) {
          continue;
        }
        sat_.add_clause(cl);
      }
      return;
    }
    // head(x, y1..yn) ∧ ⋀ s_i(y_i, z̄_i) → rhs(x, z̄_1 … z̄_n), or x ∈ {z_i}
    size_t n = ri.tail.size();
    std::vector<int> widths;
    int total = 1 + static_cast<int>(n);
    for (const auto& s : ri.tail) {
      widths.push_back(cbox_.sig(s).arity() - 1);
      total += widths.back();
    }
    for (const auto& all : tuples(total)) {
      std::vector<int> head(all.begin(), all.begin() + 1 + n);
      std::vector<int> cl{-role_lit(ri.head, head)};
      std::vector<int> out{all[0]};
      bool eq = false;
      size_t pos = 1 + n;
      for (size_t i = 0; i < n; ++i) {
        std::vector<int> u{all[1 + i]};
        for (int w = 0; w < widths[i]; ++w) u.push_back(all[pos + w]);
        if (widths[i] == 1 && all[pos] == all[0]) eq = true;
        out.insert(out.end(), u.begin() + 1, u.end());
        pos += widths[i];
        cl.push_back(-role_lit(ri.tail[i], u));
      }
      guard_lits(ri, {all.begin() + 1, all.end()}, cl);
      if (ri.rhs) {
        cl.push_back(role_lit(*ri.rhs, out));
      } else if (eq) {
        continue;
      }
      sat_.add_clause(cl);
    }
  }

  const CBox& cbox_;
  int n_;
  Dpll sat_;
  int true_ = 0;
  std::map<std::string, std::vector<int>> names_;
  std::map<std::string, std::map<std::vector<int>, int>> roles_;
  std::map<std::pair<std::string, std::vector<int>>, int> derived_;
  std::unordered_map<std::string, int> cache_;
};

}  // namespace

std::optional<CounterModel> bounded_model_search(const CBox& cbox, const Concept& lhs, const Concept& rhs,
                                                 int max_size) {
  if (max_size > 4) throw Error("bounded_model_search: max_size must be at most 4");
  CBox box = cbox;
  // names that only occur in the query still need variables
  box.queries.assign(1, Query{lhs, rhs});
  for (int size = 1; size <= max_size; ++size) {
    Encoder enc(box, size);
    enc.axioms();
    enc.query(lhs, rhs);
    if (!enc.solve()) continue;
    CounterModel cm{enc.decode(), 0};
    if (!is_model(cbox, cm.model) || !extension(cbox, cm.model, lhs).count(0) ||
        extension(cbox, cm.model, rhs).count(0))
      throw Error("bounded model search decoded an interpretation that is not a countermodel");
    return cm;
  }
  return std::nullopt;
}

}  // namespace loctame
