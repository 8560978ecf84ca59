// Clausal normal form used by forgetting.
//
// A clause stands for ⊤ ⊑ L1 ⊔ ... ⊔ Ln. Role literals always have a
// definer as filler; definers are fresh names "_D<n>" that stand for the
// filler they were introduced for. A clause holds at most one negative
// definer literal: clauses without one are global, a clause with ¬D
// constrains D.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofforge/dl.hpp"

namespace proofforge {

struct Literal {
  enum class Kind : unsigned char { Pos, Neg, Exists, Forall };
  Kind kind = Kind::Pos;
  std::string name;  // concept name, or the definer for role literals
  RoleName role;

  static Literal pos(std::string n) { return {Kind::Pos, std::move(n), {}}; }
  static Literal neg(std::string n) { return {Kind::Neg, std::move(n), {}}; }
  static Literal exists(RoleName r, std::string d) { return {Kind::Exists, std::move(d), std::move(r)}; }
  static Literal forall(RoleName r, std::string d) { return {Kind::Forall, std::move(d), std::move(r)}; }

  bool isRole() const { return kind == Kind::Exists || kind == Kind::Forall; }
  std::string key() const;
  auto operator<=>(const Literal&) const = default;
};

struct Clause {
  std::vector<Literal> lits;  // sorted, unique
  int logId = -1;
  // Set on copies a combined definer inherited from one of its parts.
  std::string inheritedFrom;

  static Clause of(std::vector<Literal> lits);
  std::string key() const;
  bool tautology() const;
  std::optional<std::string> negDefiner(const std::set<std::string>& definers) const;
  bool mentions(const std::string& conceptName) const;
  bool mentionsRole(const RoleName& r) const;
  bool subsumes(const Clause& other) const;
};

bool isDefinerName(const std::string& name);

struct DefinerInfo {
  std::string name;
  Concept represents;
  std::set<std::string> base;  // singleton for plain definers
};

class DefinerTable {
 public:
  explicit DefinerTable(std::size_t cap = 1024) : cap_(cap) {}

  // Interned per filler. `created` reports whether the name is new.
  std::string forFiller(const Concept& filler, bool* created = nullptr);
  // Definer for the union of both base sets; represents the conjunction.
  std::string combine(const std::string& a, const std::string& b, bool* created = nullptr);

  bool contains(const std::string& name) const { return byName_.count(name) != 0; }
  const DefinerInfo& info(const std::string& name) const { return byName_.at(name); }
  const std::set<std::string>& names() const { return names_; }
  std::size_t size() const { return byName_.size(); }
  // Definers whose base set is a proper superset of base(name).
  std::vector<std::string> supersetsOf(const std::string& name) const;
  std::vector<std::string> subsetsOf(const std::string& name) const;

 private:
  std::string fresh(Concept represents, std::set<std::string> base);
  std::size_t cap_;
  std::map<std::string, DefinerInfo> byName_;
  std::set<std::string> names_;
  std::map<std::string, std::string> byFiller_;
  std::map<std::set<std::string>, std::string> byBase_;
  int counter_ = 0;
};

Concept literalConcept(const Literal& l);
// ⊤ ⊑ L1 ⊔ ... ⊔ Ln with definers printed as concept names.
Axiom clauseAxiom(const Clause& c);

// Inference log of a forgetting run. Nodes are input axioms and clauses;
// entries are topologically ordered.
struct LogNode {
  int id = 0;
  std::optional<Axiom> input;
  Clause clause;
};

struct LogEntry {
  std::string rule;
  std::vector<int> premises;
  int conclusion = 0;
  std::string sideCondition;
};

struct InferenceLog {
  std::vector<LogNode> nodes;
  std::vector<LogEntry> entries;

  int addInput(const Axiom& a);
  int addClause(const Clause& c);
  void truncate(std::size_t nodeCount, std::size_t entryCount);
};

struct NormalizedOntology {
  std::vector<Clause> clauses;
  std::vector<Axiom> roleAxioms;
  DefinerTable definers;
};

// Structural transformation of every GCI and Equiv into clauses. Input
// axioms must not use definer names.
NormalizedOntology normalize(const Ontology& o, InferenceLog* log = nullptr, std::size_t definerCap = 1024);

}  // namespace proofforge
