#include "proofforge/dl.hpp"

#include <algorithm>
#include <stdexcept>

namespace proofforge {

struct Concept::Node {
  Kind kind = Kind::Top;
  std::string id;  // concept name or role name
  std::vector<Concept> children;
  std::string key;
  std::size_t hash = 0;
};

namespace {

std::string asciiKey(const Concept::Node& n) {
  using K = Concept::Kind;
  switch (n.kind) {
    case K::Top: return "top";
    case K::Bottom: return "bot";
    case K::Name: return n.id;
    case K::Not: return "not(" + n.children[0].key() + ")";
    case K::Exists: return "some(" + n.id + ", " + n.children[0].key() + ")";
    case K::Forall: return "only(" + n.id + ", " + n.children[0].key() + ")";
    case K::And:
    case K::Or: {
      std::string out = n.kind == K::And ? "and(" : "or(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        out += n.children[i].key();
      }
      return out + ")";
    }
  }
  return {};
}

bool needsParens(const Concept& c) { return c.is(Concept::Kind::And) || c.is(Concept::Kind::Or); }

std::string unicode(const Concept& c) {
  using K = Concept::Kind;
  auto wrap = [](const Concept& x) {
    return needsParens(x) ? "(" + unicode(x) + ")" : unicode(x);
  };
  switch (c.kind()) {
    case K::Top: return "⊤";
    case K::Bottom: return "⊥";
    case K::Name: return c.id();
    case K::Not: return "¬" + wrap(c.filler());
    case K::Exists: return "∃" + c.role() + "." + wrap(c.filler());
    case K::Forall: return "∀" + c.role() + "." + wrap(c.filler());
    case K::And:
    case K::Or: {
      std::string sep = c.is(K::And) ? " ⊓ " : " ⊔ ";
      std::string out;
      bool first = true;
      for (const auto& op : c.operands()) {
        if (!first) out += sep;
        first = false;
        out += wrap(op);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

Concept Concept::make(Node node) {
  node.key = asciiKey(node);
  node.hash = std::hash<std::string>{}(node.key);
  return Concept(std::make_shared<const Node>(std::move(node)));
}

Concept Concept::top() {
  static const Concept t = make(Node{Kind::Top, {}, {}, {}, 0});
  return t;
}

Concept Concept::bottom() {
  static const Concept b = make(Node{Kind::Bottom, {}, {}, {}, 0});
  return b;
}

Concept Concept::name(std::string id) {
  if (id.empty()) throw std::invalid_argument("concept name must be nonempty");
  return make(Node{Kind::Name, std::move(id), {}, {}, 0});
}

Concept Concept::negation(Concept c) { return make(Node{Kind::Not, {}, {std::move(c)}, {}, 0}); }

namespace {

std::vector<Concept> canonicalOperands(Concept::Kind kind, std::vector<Concept> ops) {
  std::vector<Concept> flat;
  flat.reserve(ops.size());
  for (auto& op : ops) {
    if (op.kind() == kind) {
      for (const auto& inner : op.operands()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(op));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return flat;
}

}  // namespace

Concept Concept::conjunction(std::vector<Concept> operands) {
  auto ops = canonicalOperands(Kind::And, std::move(operands));
  if (ops.empty()) return top();
  if (ops.size() == 1) return ops.front();
  return make(Node{Kind::And, {}, std::move(ops), {}, 0});
}

Concept Concept::disjunction(std::vector<Concept> operands) {
  auto ops = canonicalOperands(Kind::Or, std::move(operands));
  if (ops.empty()) return bottom();
  if (ops.size() == 1) return ops.front();
  return make(Node{Kind::Or, {}, std::move(ops), {}, 0});
}

Concept Concept::exists(RoleName role, Concept filler) {
  if (role.empty()) throw std::invalid_argument("role name must be nonempty");
  return make(Node{Kind::Exists, std::move(role), {std::move(filler)}, {}, 0});
}

Concept Concept::forall(RoleName role, Concept filler) {
  if (role.empty()) throw std::invalid_argument("role name must be nonempty");
  return make(Node{Kind::Forall, std::move(role), {std::move(filler)}, {}, 0});
}

Concept::Kind Concept::kind() const { return node_->kind; }

bool Concept::isLiteral() const {
  return is(Kind::Name) || (is(Kind::Not) && filler().is(Kind::Name));
}

const std::string& Concept::id() const { return node_->id; }
const RoleName& Concept::role() const { return node_->id; }
const Concept& Concept::filler() const { return node_->children.front(); }
std::span<const Concept> Concept::operands() const { return node_->children; }
const std::string& Concept::key() const { return node_->key; }
std::size_t Concept::hash() const { return node_->hash; }

std::string Concept::print(PrintStyle style) const {
  return style == PrintStyle::Ascii ? key() : unicode(*this);
}

bool Concept::operator==(const Concept& other) const {
  return node_ == other.node_ || (node_->hash == other.node_->hash && node_->key == other.node_->key);
}

std::strong_ordering Concept::operator<=>(const Concept& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  return node_->key <=> other.node_->key;
}

// --- Signature ---------------------------------------------------------------

bool Signature::includes(const Signature& other) const {
  return std::includes(concepts.begin(), concepts.end(), other.concepts.begin(), other.concepts.end()) &&
         std::includes(roles.begin(), roles.end(), other.roles.begin(), other.roles.end());
}

void Signature::merge(const Signature& other) {
  concepts.insert(other.concepts.begin(), other.concepts.end());
  roles.insert(other.roles.begin(), other.roles.end());
}

void collectSignature(const Concept& c, Signature& into) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom: return;
    case K::Name: into.concepts.insert(c.id()); return;
    case K::Not: collectSignature(c.filler(), into); return;
    case K::Exists:
    case K::Forall:
      into.roles.insert(c.role());
      collectSignature(c.filler(), into);
      return;
    case K::And:
    case K::Or:
      for (const auto& op : c.operands()) collectSignature(op, into);
      return;
  }
}

Signature conceptSignature(const Concept& c) {
  Signature s;
  collectSignature(c, s);
  return s;
}

// --- Axiom -------------------------------------------------------------------

Axiom Axiom::gci(Concept lhs, Concept rhs) {
  Axiom a;
  a.kind_ = Kind::Gci;
  a.key_ = "sub(" + lhs.key() + ", " + rhs.key() + ")";
  a.lhs_ = std::make_shared<const Concept>(std::move(lhs));
  a.rhs_ = std::make_shared<const Concept>(std::move(rhs));
  return a;
}

Axiom Axiom::equiv(Concept lhs, Concept rhs) {
  Axiom a;
  a.kind_ = Kind::Equiv;
  a.key_ = "equiv(" + lhs.key() + ", " + rhs.key() + ")";
  a.lhs_ = std::make_shared<const Concept>(std::move(lhs));
  a.rhs_ = std::make_shared<const Concept>(std::move(rhs));
  return a;
}

Axiom Axiom::roleInclusion(RoleName sub, RoleName sup) {
  if (sub.empty() || sup.empty()) throw std::invalid_argument("role name must be nonempty");
  Axiom a;
  a.kind_ = Kind::RoleInclusion;
  a.key_ = "subrole(" + sub + ", " + sup + ")";
  a.sub_ = std::move(sub);
  a.sup_ = std::move(sup);
  return a;
}

std::string Axiom::print(PrintStyle style) const {
  if (style == PrintStyle::Ascii) return key_;
  switch (kind_) {
    case Kind::Gci: return lhs().print(style) + " ⊑ " + rhs().print(style);
    case Kind::Equiv: return lhs().print(style) + " ≡ " + rhs().print(style);
    case Kind::RoleInclusion: return sub_ + " ⊑ " + sup_;
  }
  return {};
}

Signature Axiom::signature() const {
  Signature s;
  if (kind_ == Kind::RoleInclusion) {
    s.roles.insert(sub_);
    s.roles.insert(sup_);
  } else {
    collectSignature(lhs(), s);
    collectSignature(rhs(), s);
  }
  return s;
}

std::vector<std::pair<Concept, Concept>> asInclusions(const Axiom& a) {
  switch (a.kind()) {
    case Axiom::Kind::Gci: return {{a.lhs(), a.rhs()}};
    case Axiom::Kind::Equiv: return {{a.lhs(), a.rhs()}, {a.rhs(), a.lhs()}};
    case Axiom::Kind::RoleInclusion: return {};
  }
  return {};
}

// --- Ontology ----------------------------------------------------------------

Ontology::Ontology(std::vector<Axiom> axioms) {
  for (auto& a : axioms) add(a);
}

bool Ontology::add(const Axiom& a) {
  if (!keys_.insert(a.key()).second) return false;
  axioms_.push_back(a);
  return true;
}

Signature Ontology::signature() const {
  Signature s;
  for (const auto& a : axioms_) s.merge(a.signature());
  return s;
}

std::string Ontology::canonicalKey() const {
  std::vector<std::string> keys;
  keys.reserve(axioms_.size());
  for (const auto& a : axioms_) keys.push_back(a.key());
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) {
    out += k;
    out += '\n';
  }
  return out;
}

// --- Role hierarchy ------------------------------------------------------------

RoleHierarchy::RoleHierarchy(const Ontology& o) { close(o.axioms()); }
RoleHierarchy::RoleHierarchy(std::span<const Axiom> axioms) { close(axioms); }

void RoleHierarchy::close(std::span<const Axiom> axioms) {
  for (const auto& a : axioms) {
    if (!a.is(Axiom::Kind::RoleInclusion)) {
      roles_.merge(a.signature().roles);
      continue;
    }
    roles_.insert(a.sub());
    roles_.insert(a.sup());
    up_[a.sub()].insert(a.sup());
  }
  for (const auto& r : roles_) up_[r].insert(r);
  // Warshall-style closure; role sets are tiny.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [r, sups] : up_) {
      std::set<RoleName> add;
      for (const auto& s : sups) {
        auto it = up_.find(s);
        if (it == up_.end()) continue;
        for (const auto& t : it->second)
          if (!sups.count(t)) add.insert(t);
      }
      if (!add.empty()) {
        sups.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
}

bool RoleHierarchy::subsumes(const RoleName& sub, const RoleName& sup) const {
  if (sub == sup) return true;
  auto it = up_.find(sub);
  return it != up_.end() && it->second.count(sup) != 0;
}

std::set<RoleName> RoleHierarchy::superRoles(const RoleName& r) const {
  auto it = up_.find(r);
  if (it == up_.end()) return {r};
  return it->second;
}

std::set<RoleName> RoleHierarchy::subRoles(const RoleName& r) const {
  std::set<RoleName> out{r};
  for (const auto& [s, sups] : up_)
    if (sups.count(r)) out.insert(s);
  return out;
}

bool roleSubsumes(const Ontology& o, const RoleName& r, const RoleName& s) {
  return RoleHierarchy(o).subsumes(r, s);
}

// --- Concept utilities ---------------------------------------------------------

namespace {

Concept nnfImpl(const Concept& c, bool negated) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top: return negated ? Concept::bottom() : c;
    case K::Bottom: return negated ? Concept::top() : c;
    case K::Name: return negated ? Concept::negation(c) : c;
    case K::Not: return nnfImpl(c.filler(), !negated);
    case K::And:
    case K::Or: {
      std::vector<Concept> ops;
      for (const auto& op : c.operands()) ops.push_back(nnfImpl(op, negated));
      bool conj = c.is(K::And) != negated;
      return conj ? Concept::conjunction(std::move(ops)) : Concept::disjunction(std::move(ops));
    }
    case K::Exists: {
      auto f = nnfImpl(c.filler(), negated);
      return negated ? Concept::forall(c.role(), f) : Concept::exists(c.role(), f);
    }
    case K::Forall: {
      auto f = nnfImpl(c.filler(), negated);
      return negated ? Concept::exists(c.role(), f) : Concept::forall(c.role(), f);
    }
  }
  return c;
}

}  // namespace

Concept nnf(const Concept& c) { return nnfImpl(c, false); }

int negationCount(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
    case K::Name: return 0;
    case K::Not: return 1 + negationCount(c.filler());
    case K::Exists:
    case K::Forall: return negationCount(c.filler());
    case K::And:
    case K::Or: {
      int n = 0;
      for (const auto& op : c.operands()) n += negationCount(op);
      return n;
    }
  }
  return 0;
}

int conceptSize(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
    case K::Name: return 1;
    case K::Not: return 1 + conceptSize(c.filler());
    case K::Exists:
    case K::Forall: return 2 + conceptSize(c.filler());  // constructor + role
    case K::And:
    case K::Or: {
      int n = 1;
      for (const auto& op : c.operands()) n += conceptSize(op);
      return n;
    }
  }
  return 1;
}

int axiomSize(const Axiom& a) {
  if (a.is(Axiom::Kind::RoleInclusion)) return 3;
  return 1 + conceptSize(a.lhs()) + conceptSize(a.rhs());
}

Concept substitute(const Concept& c, const std::map<std::string, Concept>& defs) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom: return c;
    case K::Name: {
      auto it = defs.find(c.id());
      return it == defs.end() ? c : it->second;
    }
    case K::Not: return Concept::negation(substitute(c.filler(), defs));
    case K::Exists: return Concept::exists(c.role(), substitute(c.filler(), defs));
    case K::Forall: return Concept::forall(c.role(), substitute(c.filler(), defs));
    case K::And:
    case K::Or: {
      std::vector<Concept> ops;
      for (const auto& op : c.operands()) ops.push_back(substitute(op, defs));
      return c.is(K::And) ? Concept::conjunction(std::move(ops)) : Concept::disjunction(std::move(ops));
    }
  }
  return c;
}

}  // namespace proofforge
