// Uniform interpolation for ALCH TBoxes by resolution over clauses with
// definers.

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proofforge/clauses.hpp"
#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"

namespace proofforge {

class BudgetExceeded : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class CyclicDefiner : public Error {
 public:
  explicit CyclicDefiner(std::vector<std::string> definers);
  const std::vector<std::string>& definers() const { return definers_; }

 private:
  std::vector<std::string> definers_;
};

struct ForgetBudget {
  std::chrono::milliseconds perName{10000};
  std::size_t maxClauses = 20000;
  std::size_t maxDefiners = 1024;
  CancelToken cancel;

  // perName taken from PROOFFORGE_TIMEOUT_SECS when set.
  static ForgetBudget fromEnvironment();
};

class ClauseForgetter {
 public:
  // With a log, every inference is recorded and subsumption deletion is off.
  ClauseForgetter(NormalizedOntology start, InferenceLog* log = nullptr);
  ~ClauseForgetter();
  ClauseForgetter(const ClauseForgetter&) = delete;
  ClauseForgetter& operator=(const ClauseForgetter&) = delete;

  void forgetConceptName(const std::string& name, const ForgetBudget& budget = {});
  void forgetRoleName(const RoleName& role, const ForgetBudget& budget = {});

  // One saturation pass of each kind, for inspection. Returns the number of
  // clauses added.
  std::size_t resolveOn(const std::string& name);
  std::size_t applyRoleRules(const std::string& name);

  std::vector<Clause> clauses() const;
  const std::vector<Axiom>& roleAxioms() const;
  const DefinerTable& definers() const;
  // Throws CyclicDefiner when a definer reachable from a global clause
  // depends on itself.
  void checkAcyclic() const;
  Ontology denormalize() const;

  struct State;
  State snapshot() const;
  void restore(const State& s);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

struct ClauseForgetter::State {
  std::vector<Clause> store;
  std::vector<bool> alive;
  std::map<std::string, std::size_t> index;
  std::vector<Axiom> roleAxioms;
  DefinerTable definers;
};

// Clauses without a negative definer become axioms; definers are replaced
// by the conjunction of their current clauses, then every axiom is
// beautified. Tautologies are dropped.
Ontology denormalize(const std::vector<Clause>& clauses, const std::vector<Axiom>& roleAxioms,
                     const DefinerTable& definers);

struct ForgetResult {
  Ontology result;
  std::vector<std::string> failedNames;
  std::optional<InferenceLog> log;
  // Logging mode only: the clause state after the last name.
  std::vector<Clause> finalClauses;
  std::optional<DefinerTable> definers;
};

// Forgets the names in `order` (default: sig(o) minus keep, concepts then
// roles, each sorted). A name whose elimination exceeds the budget or
// leaves a cyclic definer is kept and reported in failedNames.
ForgetResult forgetSignature(const Ontology& o, const Signature& keep, std::vector<std::string> order = {},
                             bool logging = false, const ForgetBudget& budget = {});

// Single-name forgetting on an ontology, memoized across calls. nullopt
// means the elimination failed.
std::optional<Ontology> forgetName(const Ontology& o, const std::string& name, const ForgetBudget& budget = {});

struct ForgettingCacheStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
};
ForgettingCacheStats forgettingCacheStats();
void clearForgettingCache();

}  // namespace proofforge
