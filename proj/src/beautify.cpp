#include "proofforge/beautify.hpp"

#include <algorithm>

namespace proofforge {

namespace {

using K = Concept::Kind;

bool complementary(const std::vector<Concept>& ops) {
  for (const auto& op : ops)
    if (op.is(K::Not) && std::find(ops.begin(), ops.end(), op.filler()) != ops.end()) return true;
  return false;
}

Concept simplifyNnf(const Concept& c) {
  switch (c.kind()) {
    case K::Exists: {
      Concept f = simplifyNnf(c.filler());
      return f.is(K::Bottom) ? Concept::bottom() : Concept::exists(c.role(), f);
    }
    case K::Forall: {
      Concept f = simplifyNnf(c.filler());
      return f.is(K::Top) ? Concept::top() : Concept::forall(c.role(), f);
    }
    case K::And: {
      std::vector<Concept> ops;
      for (const auto& op : c.operands()) {
        Concept s = simplifyNnf(op);
        if (s.is(K::Bottom)) return Concept::bottom();
        if (!s.is(K::Top)) ops.push_back(s);
      }
      Concept out = Concept::conjunction(std::move(ops));
      if (out.is(K::And) && complementary({out.operands().begin(), out.operands().end()})) return Concept::bottom();
      return out;
    }
    case K::Or: {
      std::vector<Concept> ops;
      for (const auto& op : c.operands()) {
        Concept s = simplifyNnf(op);
        if (s.is(K::Top)) return Concept::top();
        if (!s.is(K::Bottom)) ops.push_back(s);
      }
      Concept out = Concept::disjunction(std::move(ops));
      if (out.is(K::Or) && complementary({out.operands().begin(), out.operands().end()})) return Concept::top();
      return out;
    }
    default: return c;
  }
}

int nestedBottoms(const Concept& c) {
  switch (c.kind()) {
    case K::Bottom: return 1;
    case K::Not:
    case K::Exists:
    case K::Forall: return nestedBottoms(c.filler());
    case K::And:
    case K::Or: {
      int n = 0;
      for (const auto& op : c.operands()) n += nestedBottoms(op);
      return n;
    }
    default: return 0;
  }
}

struct Shape {
  Concept lhs;
  Concept rhs;
  int cost;
};

Shape shape(const std::vector<Concept>& ds, const std::vector<bool>& moved) {
  std::vector<Concept> left, right;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (moved[i]) left.push_back(simplify(Concept::negation(ds[i])));
    else right.push_back(ds[i]);
  }
  Concept l = Concept::conjunction(std::move(left));
  Concept r = Concept::disjunction(std::move(right));
  int cost = negationCount(l) + negationCount(r) + nestedBottoms(l) + (r.is(K::Bottom) ? 0 : nestedBottoms(r));
  return {l, r, cost};
}

}  // namespace

Concept simplify(const Concept& c) { return simplifyNnf(nnf(c)); }

std::optional<Axiom> beautify(const Axiom& a) {
  if (!a.is(Axiom::Kind::Gci)) return a;
  Concept e = simplify(Concept::disjunction({Concept::negation(a.lhs()), a.rhs()}));
  if (e.is(K::Top)) return std::nullopt;
  std::vector<Concept> ds;
  if (e.is(K::Or)) ds.assign(e.operands().begin(), e.operands().end());
  else if (!e.is(K::Bottom)) ds.push_back(e);
  std::vector<bool> moved(ds.size(), false);
  Shape best = shape(ds, moved);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < ds.size() && !improved; ++i) {
      if (moved[i]) continue;
      moved[i] = true;
      Shape s = shape(ds, moved);
      if (s.cost < best.cost) {
        best = s;
        improved = true;
      } else {
        moved[i] = false;
      }
    }
  }
  return Axiom::gci(best.lhs, best.rhs);
}

}  // namespace proofforge
