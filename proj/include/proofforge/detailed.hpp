// Detailed proofs: the individual resolution inferences performed while
// forgetting everything except the goal's names.

#pragma once

#include <string>
#include <vector>

#include "proofforge/clauses.hpp"
#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/proof.hpp"

namespace proofforge {

class NotAtomicGoal : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

// No final clause yields the goal; points at an incompleteness of the
// calculus implementation.
class GoalNotDerived : public Error {
 public:
  using Error::Error;
};

constexpr std::size_t kLargeSignature = 18;

struct DetailedOptions {
  Measure measure = Measure::size();
  Signature knownSig;
  CancelToken cancel;
  ForgetBudget budget = ForgetBudget::fromEnvironment();
  // Substitute definers first and beautify afterwards.
  bool beautifyAfterSubstitution = false;
  std::function<void(const std::string& phase, double fraction)> progress;
};

struct DetailedResult {
  Proof proof;
  std::vector<std::string> warnings;
};

// A ⊑ B or A ⊑ ⊥ with A, B concept names.
bool isAtomicGoal(const Axiom& goal);

// Step from the clause {¬A ⊔ B}, {¬A} or {B} to the goal, rule "conclusion".
// Throws GoalNotDerived when no such clause is present.
PoolStep finalClauseToGoal(const std::vector<Clause>& clauses, const Axiom& goal);

DetailedResult generateDetailedProof(const Ontology& o, const Axiom& goal, const DetailedOptions& opts = {});

}  // namespace proofforge
