#include "loctame/normalize.hpp"

#include <set>

namespace loctame {

namespace {

using K = Concept::Kind;

bool basic(const Concept& c) { return c.kind == K::Name || c.kind == K::Top; }

void flatten_conj(const Concept& c, std::vector<Concept>& out) {
  if (c.kind == K::Conj) {
    flatten_conj(c.args[0], out);
    flatten_conj(c.args[1], out);
  } else {
    out.push_back(c);
  }
}

void check_fragment(const CBox& box, const Concept& c, int line) {
  auto where = [&] { return line > 0 ? " (line " + std::to_string(line) + ")" : std::string(); };
  switch (c.kind) {
    case K::Interval: throw UnsupportedConstruct("interval concepts are outside binary EL+" + where());
    case K::Exists:
      if (c.args.size() != 1 || box.restriction(c.name))
        throw UnsupportedConstruct("role '" + c.name + "' is not a plain binary role" + where());
      break;
    default: break;
  }
  for (const auto& a : c.args) check_fragment(box, a, line);
}

class Normalizer {
 public:
  explicit Normalizer(const CBox& in) : in_(in) {
    for (const auto& n : in.concept_names()) used_.insert(n);
    for (const auto& [r, s] : in.roles) used_.insert(r);
  }

  NormalizedCBox run() {
    out_.cbox.roles = in_.roles;
    for (const auto& [r, s] : in_.roles)
      if (s.arity() != 2 || s.sorts[1] != Sort::Concept)
        throw UnsupportedConstruct("role '" + r + "' is not a binary concept role");
    for (size_t i = 0; i < in_.axioms.size(); ++i) {
      int line = i < in_.axiom_lines.size() ? in_.axiom_lines[i] : 0;
      const Axiom& a = in_.axioms[i];
      if (const auto* g = std::get_if<Gci>(&a)) {
        check_fragment(in_, g->lhs, line);
        check_fragment(in_, g->rhs, line);
        gci(g->lhs, g->rhs);
      } else if (const auto* ri = std::get_if<RoleInclusion>(&a)) {
        role_incl(*ri, line);
      } else {
        throw UnsupportedConstruct("role restrictions are outside binary EL+ (line " + std::to_string(line) + ")");
      }
    }
    out_.cbox.queries = in_.queries;
    out_.cbox.split = in_.split;
    return std::move(out_);
  }

 private:
  std::string fresh() {
    std::string n;
    do n = "__n" + std::to_string(++counter_);
    while (used_.count(n));
    used_.insert(n);
    out_.fresh.push_back(n);
    return n;
  }

  void emit(Concept l, Concept r) {
    out_.cbox.axioms.push_back(Gci{std::move(l), std::move(r)});
    out_.cbox.axiom_lines.push_back(0);
  }

  void emit_role(RoleInclusion ri) {
    out_.cbox.axioms.push_back(std::move(ri));
    out_.cbox.axiom_lines.push_back(0);
  }

  // Replaces a non-basic concept by a fresh name. `below` selects the
  // direction of the defining inclusion: c ⊑ A for lhs positions, A ⊑ c else.
  Concept name_for(const Concept& c, bool below) {
    if (basic(c)) return c;
    Concept a = Concept::named(fresh());
    if (below)
      gci(c, a);
    else
      gci(a, c);
    return a;
  }

  void gci(const Concept& lhs, const Concept& rhs) {
    if (lhs.kind == K::Bottom || rhs.kind == K::Top) return;
    bool rhs_atomic = basic(rhs) || rhs.kind == K::Bottom;
    if (!basic(lhs) && !rhs_atomic) {
      Concept a = Concept::named(fresh());
      gci(lhs, a);
      gci(a, rhs);
      return;
    }
    if (basic(lhs)) {
      switch (rhs.kind) {
        case K::Conj:
          gci(lhs, rhs.args[0]);
          gci(lhs, rhs.args[1]);
          return;
        case K::Exists: emit(lhs, Concept::exists(rhs.name, {name_for(rhs.args[0], false)})); return;
        default: emit(lhs, rhs); return;
      }
    }
    if (lhs.kind == K::Conj) {
      std::vector<Concept> parts;
      flatten_conj(lhs, parts);
      for (const auto& p : parts)
        if (p.kind == K::Bottom) return;
      for (auto& p : parts) p = name_for(p, true);
      Concept acc = parts[0];
      for (size_t i = 1; i + 1 < parts.size(); ++i) {
        Concept x = Concept::named(fresh());
        emit(Concept::conj(acc, parts[i]), x);
        acc = x;
      }
      if (parts.size() == 1)
        emit(acc, rhs);
      else
        emit(Concept::conj(acc, parts.back()), rhs);
      return;
    }
    // lhs is an existential restriction
    const Concept& filler = lhs.args[0];
    if (filler.kind == K::Bottom) return;
    emit(Concept::exists(lhs.name, {name_for(filler, true)}), rhs);
  }

  void role_incl(const RoleInclusion& ri, int line) {
    auto bad = [&](const std::string& what) {
      throw UnsupportedConstruct(what + " is outside binary EL+ (line " + std::to_string(line) + ")");
    };
    if (ri.guard) bad("a guarded role inclusion");
    if (!ri.rhs) bad("an inclusion into id");
    if (ri.tuple && ri.tail.size() != 1) bad("an n-ary composition");
    if (ri.tail.size() <= 1) {
      RoleInclusion r = ri;
      r.tuple = false;
      emit_role(r);
      return;
    }
    std::string acc = ri.head;
    for (size_t i = 0; i + 1 < ri.tail.size(); ++i) {
      std::string u = fresh();
      out_.cbox.roles[u] = RoleSig{{Sort::Concept, Sort::Concept}};
      emit_role(RoleInclusion{acc, {ri.tail[i]}, false, u, std::nullopt});
      acc = u;
    }
    emit_role(RoleInclusion{acc, {ri.tail.back()}, false, ri.rhs, std::nullopt});
  }

  const CBox& in_;
  NormalizedCBox out_;
  std::set<std::string> used_;
  int counter_ = 0;
};

size_t count_symbols(const Concept& c) {
  size_t n = c.kind == K::Conj ? 0 : 1;
  for (const auto& a : c.args) n += count_symbols(a);
  return n;
}

}  // namespace

NormalizedCBox normalize(const CBox& cbox) { return Normalizer(cbox).run(); }

bool is_normal_gci(const Gci& g) {
  const Concept& l = g.lhs;
  const Concept& r = g.rhs;
  bool r_atomic = basic(r) || r.kind == K::Bottom;
  if (basic(l)) return r_atomic || (r.kind == K::Exists && r.args.size() == 1 && basic(r.args[0]));
  if (l.kind == K::Conj) return basic(l.args[0]) && basic(l.args[1]) && r_atomic;
  if (l.kind == K::Exists) return l.args.size() == 1 && basic(l.args[0]) && r_atomic;
  return false;
}

size_t symbol_count(const CBox& cbox) {
  size_t n = 0;
  for (const auto& a : cbox.axioms) {
    if (const auto* g = std::get_if<Gci>(&a)) {
      n += count_symbols(g->lhs) + count_symbols(g->rhs);
    } else if (const auto* ri = std::get_if<RoleInclusion>(&a)) {
      n += 2 + ri->tail.size() + (ri->guard ? count_symbols(*ri->guard) : 0);
    } else {
      n += 2 + count_symbols(std::get<RoleRestriction>(a).filler);
    }
  }
  return n;
}

}  // namespace loctame
