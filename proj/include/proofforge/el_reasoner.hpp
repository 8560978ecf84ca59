// ELH saturation with full inference tracing.
//
// Conclusions are subsumptions X ⊑ C where X is a named concept or the
// filler of some existential in the ontology. Every rule instance is kept
// in the pool, including alternative derivations of the same conclusion.
// Tautological premises (X ⊑ X, X ⊑ ⊤) are left out of recorded steps.

#pragma once

#include <optional>
#include <vector>

#include "proofforge/dl.hpp"
#include "proofforge/proof.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

struct TracedDerivation {
  std::vector<Axiom> conclusions;
  InferencePool pool;
  bool goalReached = false;
};

bool isELH(const Ontology& o);
bool isELH(const Axiom& a);

TracedDerivation saturate(const Ontology& o, const std::optional<Axiom>& goal = std::nullopt);

// Entailed A ⊑ B (A ≠ B, B ≠ ⊤) and A ⊑ ⊥ over named concepts, sorted by
// printed form. An unsatisfiable name only contributes A ⊑ ⊥.
std::vector<Axiom> classify(const Ontology& o, const TableauConfig& cfg = {});

}  // namespace proofforge
