// Tableau satisfiability for ALCH concepts with respect to general TBoxes.
//
// Every GCI C ⊑ D is internalized as nnf(¬C ⊔ D) and asserted at every
// node. Expansion is depth-first with the left disjunct tried first;
// termination relies on anywhere subset blocking. Clash dependency sets
// let the search jump back over branch points that did not contribute to
// a clash.

#pragma once

#include <cstddef>
#include <span>

#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"

namespace proofforge {

struct TableauConfig {
  std::size_t maxNodes = 100000;
};

bool isSatisfiable(std::span<const Axiom> tbox, const Concept& c, const TableauConfig& cfg = {});
bool isSatisfiable(const Ontology& o, const Concept& c, const TableauConfig& cfg = {});

bool isEntailed(std::span<const Axiom> tbox, const Axiom& a, const TableauConfig& cfg = {});
bool isEntailed(const Ontology& o, const Axiom& a, const TableauConfig& cfg = {});

// Conjunction of isEntailed, stopping at the first failure.
bool entailsAll(const Ontology& o, std::span<const Axiom> axioms, const TableauConfig& cfg = {});

// True iff the empty TBox entails a.
bool isTautology(const Axiom& a);

}  // namespace proofforge
