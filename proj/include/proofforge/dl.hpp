// ALCH syntax trees and ontologies.
//
// Concepts and axioms are immutable handles to shared nodes. Every node
// carries its canonical ascii rendering, which doubles as its identity.
// Conjunctions and disjunctions are flattened and sorted by that rendering
// on construction, so two concepts that differ only in operand order
// compare equal.

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace proofforge {

using RoleName = std::string;

enum class PrintStyle { Ascii, Unicode };

class Concept {
 public:
  enum class Kind : unsigned char { Top, Bottom, Name, Not, And, Or, Exists, Forall };

  static Concept top();
  static Concept bottom();
  static Concept name(std::string id);
  static Concept negation(Concept c);
  // Flattens nested operands of the same kind; an empty list yields top
  // (resp. bottom) and a single remaining operand is returned unchanged.
  static Concept conjunction(std::vector<Concept> operands);
  static Concept disjunction(std::vector<Concept> operands);
  static Concept exists(RoleName role, Concept filler);
  static Concept forall(RoleName role, Concept filler);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool isLiteral() const;

  // Name kind only.
  const std::string& id() const;
  // Exists / Forall only.
  const RoleName& role() const;
  // Not / Exists / Forall.
  const Concept& filler() const;
  // And / Or.
  std::span<const Concept> operands() const;

  const std::string& key() const;
  std::size_t hash() const;
  std::string print(PrintStyle style) const;

  bool operator==(const Concept& other) const;
  std::strong_ordering operator<=>(const Concept& other) const;

  struct Node;

 private:
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(Node node);
  std::shared_ptr<const Node> node_;
};

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  bool empty() const { return concepts.empty() && roles.empty(); }
  std::size_t size() const { return concepts.size() + roles.size(); }
  bool containsConcept(const std::string& n) const { return concepts.count(n) != 0; }
  bool containsRole(const std::string& n) const { return roles.count(n) != 0; }
  bool includes(const Signature& other) const;
  void merge(const Signature& other);
  bool operator==(const Signature&) const = default;
};

class Axiom {
 public:
  enum class Kind : unsigned char { Gci, Equiv, RoleInclusion };

  static Axiom gci(Concept lhs, Concept rhs);
  static Axiom equiv(Concept lhs, Concept rhs);
  static Axiom roleInclusion(RoleName sub, RoleName sup);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  // Gci / Equiv.
  const Concept& lhs() const { return *lhs_; }
  const Concept& rhs() const { return *rhs_; }
  // RoleInclusion.
  const RoleName& sub() const { return sub_; }
  const RoleName& sup() const { return sup_; }

  const std::string& key() const { return key_; }
  std::string print(PrintStyle style) const;
  Signature signature() const;

  bool operator==(const Axiom& other) const { return key_ == other.key_; }
  std::strong_ordering operator<=>(const Axiom& other) const { return key_ <=> other.key_; }

 private:
  Axiom() = default;
  Kind kind_ = Kind::Gci;
  std::shared_ptr<const Concept> lhs_;
  std::shared_ptr<const Concept> rhs_;
  RoleName sub_;
  RoleName sup_;
  std::string key_;
};

struct AxiomHash {
  std::size_t operator()(const Axiom& a) const { return std::hash<std::string>{}(a.key()); }
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// Ordered set of axioms without duplicates. Insertion order is preserved
// and drives every downstream tie-break.
class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(std::vector<Axiom> axioms);

  // Returns false (and leaves the ontology unchanged) for duplicates.
  bool add(const Axiom& a);
  bool contains(const Axiom& a) const { return keys_.count(a.key()) != 0; }

  const std::vector<Axiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }
  auto begin() const { return axioms_.begin(); }
  auto end() const { return axioms_.end(); }

  Signature signature() const;
  // Sorted ascii renderings joined by newlines; independent of order.
  std::string canonicalKey() const;

  // Diagnostics collected while building (e.g. dropped duplicates).
  const std::vector<std::string>& warnings() const { return warnings_; }
  void addWarning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  std::vector<Axiom> axioms_;
  std::unordered_set<std::string> keys_;
  std::vector<std::string> warnings_;
};

// Reflexive-transitive closure of the declared role inclusions.
class RoleHierarchy {
 public:
  RoleHierarchy() = default;
  explicit RoleHierarchy(const Ontology& o);
  explicit RoleHierarchy(std::span<const Axiom> axioms);

  bool subsumes(const RoleName& sub, const RoleName& sup) const;
  // All roles s with r ⊑* s, including r itself.
  std::set<RoleName> superRoles(const RoleName& r) const;
  std::set<RoleName> subRoles(const RoleName& r) const;
  const std::set<RoleName>& roles() const { return roles_; }

 private:
  void close(std::span<const Axiom> axioms);
  std::set<RoleName> roles_;
  std::map<RoleName, std::set<RoleName>> up_;
};

bool roleSubsumes(const Ontology& o, const RoleName& r, const RoleName& s);

Concept nnf(const Concept& c);
// Number of negation symbols after nothing is rewritten.
int negationCount(const Concept& c);
int conceptSize(const Concept& c);
int axiomSize(const Axiom& a);
Signature conceptSignature(const Concept& c);
void collectSignature(const Concept& c, Signature& into);

// Replaces concept names according to the map; untouched names are kept.
Concept substitute(const Concept& c, const std::map<std::string, Concept>& defs);

// Every axiom as the set of GCIs it stands for (Equiv yields two).
std::vector<std::pair<Concept, Concept>> asInclusions(const Axiom& a);

}  // namespace proofforge
