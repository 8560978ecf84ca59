// Elimination proofs: a sequence of ontologies obtained by forgetting one
// name after another, turned into inference steps via justifications.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/proof.hpp"

namespace proofforge {

enum class Strategy { Heuristic, NameOptimized, SizeOptimized };

struct OntologySequence {
  std::vector<Ontology> stages;
  // Names that vanished when moving to stage i (empty for stage 0).
  std::vector<std::vector<std::string>> eliminatedAt;
  std::vector<std::string> failed;

  std::size_t length() const { return stages.size(); }
};

using ProgressFn = std::function<void(const std::string& phase, double fraction)>;

struct EliminationTask {
  EliminationTask(Ontology o, Axiom g) : ontology(std::move(o)), goal(std::move(g)) {}

  Ontology ontology;
  Axiom goal;
  Strategy strategy = Strategy::Heuristic;
  Measure optimizeMeasure = Measure::size();
  ForgetBudget budget;
  CancelToken cancel;
  Signature knownSig;
  std::size_t maxExpansions = 500;
  // Called before every search expansion; lets tests slow the search down.
  std::function<void()> onExpand;
  ProgressFn progress;
};

// Concept names outside goalSig, and role names outside goalSig that only
// occur as ∃r.⊤ or ∀r.⊥.
std::vector<std::string> eligibleNames(const Ontology& stage, const Signature& goalSig);

// Roles first, then concepts; each group sorted.
std::vector<std::string> orderNames(std::vector<std::string> names, const Signature& sig);

OntologySequence eliminationSequence(const EliminationTask& task, const Ontology& start);

InferencePool buildSteps(const OntologySequence& seq, const Axiom& goal);
// Premises produced by another step are replaced by that step's premises
// whenever this does not increase the premise count.
InferencePool mergeSteps(const InferencePool& pool, const Axiom& goal, const Ontology& asserted);

Proof generateEliminationProof(const EliminationTask& task);

}  // namespace proofforge
