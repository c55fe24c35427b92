#include "loctame/terms.hpp"

#include <algorithm>

namespace loctame {

TermStore::TermStore() {
  for (Sort s : {Sort::Concept, Sort::Num}) {
    TermNode z;
    z.kind = TermKind::Zero;
    z.sort = s;
    intern(z);
    TermNode o;
    o.kind = TermKind::One;
    o.sort = s;
    intern(o);
  }
}

std::string TermStore::key(const TermNode& n) {
  std::string k(1, static_cast<char>('0' + static_cast<int>(n.kind)));
  k += n.sort == Sort::Concept ? 'c' : 'n';
  switch (n.kind) {
    case TermKind::Const: k += n.name; break;
    case TermKind::Apply: k += std::to_string(n.op) + ":"; [[fallthrough]];
    case TermKind::Meet:
      for (TermId a : n.args) k += std::to_string(a) + ",";
      break;
    case TermKind::Interval: {
      Concept c = Concept::num(n.interval);
      k += render(c);
      break;
    }
    default: break;
  }
  return k;
}

TermId TermStore::intern(TermNode n) {
  std::string k = key(n);
  if (auto it = index_.find(k); it != index_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(k), id);
  return id;
}

TermId TermStore::constant(const std::string& name, Sort s) {
  TermNode n;
  n.kind = TermKind::Const;
  n.sort = s;
  n.name = name;
  return intern(std::move(n));
}

TermId TermStore::meet(std::vector<TermId> parts) {
  if (parts.empty()) return one();
  Sort s = nodes_[parts[0]].sort;
  std::vector<TermId> flat;
  for (TermId p : parts) {
    const TermNode& n = nodes_[p];
    if (n.kind == TermKind::Zero) return zero(s);
    if (n.kind == TermKind::One) continue;
    if (n.kind == TermKind::Meet)
      flat.insert(flat.end(), n.args.begin(), n.args.end());
    else
      flat.push_back(p);
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return one(s);
  if (flat.size() == 1) return flat[0];
  TermNode n;
  n.kind = TermKind::Meet;
  n.sort = s;
  n.args = std::move(flat);
  return intern(std::move(n));
}

TermId TermStore::apply(OpId op, std::vector<TermId> args) {
  TermNode n;
  n.kind = TermKind::Apply;
  n.sort = Sort::Concept;
  n.op = op;
  n.args = std::move(args);
  return intern(std::move(n));
}

TermId TermStore::interval(const IntervalConcept& i) {
  TermNode n;
  n.kind = TermKind::Interval;
  n.sort = Sort::Num;
  n.interval = i;
  return intern(std::move(n));
}

OpId TermStore::op_for_role(const std::string& role, const std::vector<Sort>& arg_sorts) {
  if (auto it = op_index_.find(role); it != op_index_.end()) return it->second;
  OpId id = static_cast<OpId>(ops_.size());
  ops_.push_back(OperatorSymbol{"f_" + role, role, arg_sorts});
  op_index_.emplace(role, id);
  return id;
}

std::optional<OpId> TermStore::find_op(const std::string& role) const {
  if (auto it = op_index_.find(role); it != op_index_.end()) return it->second;
  return std::nullopt;
}

std::string TermStore::show(TermId t) const {
  const TermNode& n = nodes_[t];
  switch (n.kind) {
    case TermKind::Zero: return "0";
    case TermKind::One: return "1";
    case TermKind::Const: return n.name;
    case TermKind::Interval: return render(Concept::num(n.interval));
    case TermKind::Meet: {
      std::string s;
      for (size_t i = 0; i < n.args.size(); ++i) {
        const TermNode& a = nodes_[n.args[i]];
        std::string part = show(n.args[i]);
        if (a.kind == TermKind::Interval) part = "(" + part + ")";
        s += (i ? " ∧ " : "") + part;
      }
      return s;
    }
    case TermKind::Apply: {
      std::string s = ops_[n.op].name + "(";
      for (size_t i = 0; i < n.args.size(); ++i) s += (i ? ", " : "") + show(n.args[i]);
      return s + ")";
    }
  }
  return "?";
}

Concept TermStore::to_concept(TermId t) const {
  const TermNode& n = nodes_[t];
  switch (n.kind) {
    case TermKind::Zero: return Concept::bottom(n.sort);
    case TermKind::One: return Concept::top(n.sort);
    case TermKind::Const: return Concept::named(n.name);
    case TermKind::Interval: return Concept::num(n.interval);
    case TermKind::Meet: {
      std::vector<Concept> parts;
      for (TermId a : n.args) parts.push_back(to_concept(a));
      return conj_all(std::move(parts));
    }
    case TermKind::Apply: {
      std::vector<Concept> args;
      for (TermId a : n.args) args.push_back(to_concept(a));
      return Concept::exists(ops_[n.op].role, std::move(args));
    }
  }
  return Concept::top();
}

void TermStore::apply_subterms(TermId t, std::vector<TermId>& out) const {
  const TermNode& n = nodes_[t];
  if (n.kind == TermKind::Apply) out.push_back(t);
  for (TermId a : n.args) apply_subterms(a, out);
}

void TermStore::symbols(TermId t, std::vector<TermId>& consts, std::vector<OpId>& ops) const {
  const TermNode& n = nodes_[t];
  if (n.kind == TermKind::Const) consts.push_back(t);
  if (n.kind == TermKind::Apply) ops.push_back(n.op);
  for (TermId a : n.args) symbols(a, consts, ops);
}

}  // namespace loctame
