#include "loctame/generate.hpp"

#include <string>

namespace loctame {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

const RoleSig kBinary{{Sort::Concept, Sort::Concept}};
const RoleSig kTernary{{Sort::Concept, Sort::Concept, Sort::Concept}};

}  // namespace

CBox random_normal_el(Rng& rng, const ElParams& p) {
  CBox box;
  int n = uniform(rng, 2, p.max_names);
  int nr = uniform(rng, 1, p.max_roles);
  int na = uniform(rng, 1, p.max_axioms);
  std::vector<std::string> names, roles;
  for (int i = 0; i < n; ++i) names.push_back("A" + std::to_string(i));
  for (int i = 0; i < nr; ++i) {
    roles.push_back("r" + std::to_string(i));
    box.roles[roles.back()] = kBinary;
  }
  auto lhs_basic = [&] { return chance(rng, 0.05) ? Concept::top() : Concept::named(pick(rng, names)); };
  auto rhs_basic = [&] { return chance(rng, p.bottom_rate) ? Concept::bottom() : Concept::named(pick(rng, names)); };
  auto filler = [&] { return chance(rng, 0.05) ? Concept::top() : Concept::named(pick(rng, names)); };
  for (int i = 0; i < na; ++i) {
    if (chance(rng, p.role_axiom_rate)) {
      RoleInclusion ri;
      ri.head = pick(rng, roles);
      if (chance(rng, 0.5)) ri.tail.push_back(pick(rng, roles));
      ri.rhs = pick(rng, roles);
      box.axioms.push_back(ri);
      continue;
    }
    switch (uniform(rng, 0, 3)) {
      case 0: box.axioms.push_back(Gci{lhs_basic(), rhs_basic()}); break;
      case 1:
        box.axioms.push_back(
            Gci{Concept::conj(Concept::named(pick(rng, names)), Concept::named(pick(rng, names))), rhs_basic()});
        break;
      case 2: box.axioms.push_back(Gci{lhs_basic(), Concept::exists(pick(rng, roles), {filler()})}); break;
      default: box.axioms.push_back(Gci{Concept::exists(pick(rng, roles), {filler()}), rhs_basic()}); break;
    }
  }
  // every name occurs somewhere so the classification covers all of them
  for (const auto& a : names) box.axioms.push_back(Gci{Concept::named(a), Concept::top()});
  box.axiom_lines.assign(box.axioms.size(), 0);
  return box;
}

CBox random_el(Rng& rng, int max_names, int max_axioms) {
  CBox box;
  std::vector<std::string> names, roles{"r0", "r1", "r2"};
  int n = uniform(rng, 2, max_names);
  for (int i = 0; i < n; ++i) names.push_back("A" + std::to_string(i));
  for (const auto& r : roles) box.roles[r] = kBinary;
  int na = uniform(rng, 1, max_axioms);
  for (int i = 0; i < na; ++i) {
    if (chance(rng, 0.2)) {
      RoleInclusion ri;
      ri.head = pick(rng, roles);
      int len = uniform(rng, 0, 2);
      for (int j = 0; j < len; ++j) ri.tail.push_back(pick(rng, roles));
      ri.rhs = pick(rng, roles);
      box.axioms.push_back(ri);
      continue;
    }
    Concept l = random_concept(rng, box, names, 2), r = random_concept(rng, box, names, 2);
    box.axioms.push_back(Gci{l, r});
    if (chance(rng, 0.2)) box.axioms.push_back(Gci{r, l});
    if (chance(rng, 0.05)) box.axioms.push_back(Gci{Concept::named(pick(rng, names)), Concept::bottom()});
  }
  box.axiom_lines.assign(box.axioms.size(), 0);
  return box;
}

Concept random_concept(Rng& rng, const CBox& cbox, const std::vector<std::string>& names, int depth) {
  std::vector<std::string> roles;
  for (const auto& [r, sig] : cbox.roles) roles.push_back(r);
  for (const auto& a : cbox.axioms)
    if (const auto* rr = std::get_if<RoleRestriction>(&a)) roles.push_back(rr->role);
  int kind = depth <= 0 ? uniform(rng, 0, 9) : uniform(rng, 0, 15);
  if (kind == 0) return Concept::top();
  if (kind <= 9 || roles.empty()) return Concept::named(pick(rng, names));
  if (kind <= 12) {
    return Concept::conj(random_concept(rng, cbox, names, depth - 1), random_concept(rng, cbox, names, depth - 1));
  }
  const std::string& r = pick(rng, roles);
  std::vector<Concept> args;
  for (int i = 1; i < cbox.sig(r).arity(); ++i) args.push_back(random_concept(rng, cbox, names, depth - 1));
  return Concept::exists(r, std::move(args));
}

CBox random_extended(Rng& rng, const ExtParams& p) {
  for (;;) {
    CBox box;
    std::vector<std::string> names;
    int n = uniform(rng, 1, p.max_names);
    for (int i = 0; i < n; ++i) names.push_back("A" + std::to_string(i));
    for (const char* r : {"r0", "r1", "r2"}) box.roles[r] = kBinary;
    for (const char* t : {"t0", "t1"}) box.roles[t] = kTernary;
    const std::vector<std::string> plain{"r0", "r1", "r2"}, ternary{"t0", "t1"};
    std::vector<std::string> binary = plain;
    if (chance(rng, 0.5)) {
      box.axioms.push_back(RoleRestriction{"s0", "t0", uniform(rng, 2, 3), Concept::named(pick(rng, names))});
      binary.push_back("s0");
    }
    auto guard = [&]() -> std::optional<Concept> {
      if (!chance(rng, 0.4)) return std::nullopt;
      return random_concept(rng, box, names, 0);
    };
    int na = uniform(rng, 1, p.max_axioms);
    for (int i = 0; i < na; ++i) {
      RoleInclusion ri;
      switch (uniform(rng, 0, 9)) {
        case 0:
          ri.head = pick(rng, binary);
          ri.rhs = pick(rng, plain);
          break;
        case 1:
          ri.head = pick(rng, binary);
          ri.tail = {pick(rng, binary)};
          ri.rhs = pick(rng, plain);
          break;
        case 2:
          ri.head = pick(rng, binary);
          ri.tail = {pick(rng, binary)};
          break;
        case 3:
          ri.head = "t0";
          ri.rhs = "t1";
          break;
        case 4:
          ri.head = pick(rng, ternary);
          ri.tuple = true;
          ri.tail = {pick(rng, binary), pick(rng, binary)};
          if (chance(rng, 0.6)) ri.rhs = pick(rng, ternary);
          break;
        case 5:
          ri.head = pick(rng, binary);
          ri.tuple = true;
          ri.tail = {"t0"};
          ri.rhs = "t1";
          break;
        default: {
          Concept l = random_concept(rng, box, names, p.depth);
          Concept r = random_concept(rng, box, names, p.depth);
          box.axioms.push_back(Gci{l, r});
          continue;
        }
      }
      ri.guard = guard();
      box.axioms.push_back(ri);
    }
    box.axiom_lines.assign(box.axioms.size(), 0);
    try {
      // the parser is the arbiter of well-formedness
      return parse_cbox(render(box));
    } catch (const Error&) {
      continue;
    }
  }
}

CBox random_split(Rng& rng, int literals) {
  CBox box = random_extended(rng, ExtParams{1, 3, 1});
  // keep the role axioms only
  std::erase_if(box.axioms, [](const Axiom& a) { return std::holds_alternative<Gci>(a); });
  box.queries.clear();
  const std::vector<std::string> a_names{"a0", "s0", "s1"}, b_names{"b0", "s0", "s1"};
  int n = uniform(rng, 2, literals);
  for (int i = 0; i < n; ++i) {
    Side side = i == n - 1 || chance(rng, 0.5) ? Side::B : Side::A;
    const auto& names = side == Side::A ? a_names : b_names;
    box.split.push_back(
        {side, random_concept(rng, box, names, 1), random_concept(rng, box, names, 1), i == n - 1});
  }
  box.axiom_lines.assign(box.axioms.size(), 0);
  return parse_cbox(render(box));
}

CBox chain_family(int n) {
  CBox box;
  box.roles["r"] = kBinary;
  auto a = [](int i) { return Concept::named("A" + std::to_string(i)); };
  for (int i = 0; i < n; ++i) box.axioms.push_back(Gci{a(i), Concept::exists("r", {a(i + 1)})});
  box.axiom_lines.assign(box.axioms.size(), 0);
  box.queries.push_back(Query{a(0), Concept::exists("r", {a(1)})});
  return box;
}

}  // namespace loctame
