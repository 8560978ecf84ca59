// Readers for the two textual forms of axioms.
//
// The file format is the functional ascii syntax, one or more axioms per
// line with `#` comments:
//
//   sub(A, only(r, C1))   equiv(A, and(B, some(r, top)))   subrole(r, s)
//
// The display form (⊑, ⊓, ∃r.C, ...) is what proofs are serialized with.
// Its only ambiguity is `x ⊑ y` between two bare names, which is read as a
// role inclusion when both names are known to be roles.

#pragma once

#include <set>
#include <string>
#include <string_view>

#include "proofforge/dl.hpp"

namespace proofforge {

Ontology parseOntology(std::string_view text);
Axiom parseAxiom(std::string_view text);
Concept parseConcept(std::string_view text);

Axiom parseDisplayAxiom(std::string_view text, const std::set<std::string>& roleNames = {});
Concept parseDisplayConcept(std::string_view text);

// Newline-separated names, `#` comments allowed.
std::set<std::string> parseNameList(std::string_view text);

std::string printAxiom(const Axiom& a, PrintStyle style);

}  // namespace proofforge
