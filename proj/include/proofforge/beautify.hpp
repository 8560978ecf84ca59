// Concept simplification and readable GCI shapes.

#pragma once

#include <optional>

#include "proofforge/dl.hpp"

namespace proofforge {

// NNF plus the obvious rewrites (A⊔¬A, A⊔⊤, ∀r.⊤ to ⊤; A⊓¬A, A⊓⊥, ∃r.⊥
// to ⊥), applied bottom-up.
Concept simplify(const Concept& c);

// Rewrites a GCI as LHS ⊑ RHS, moving disjuncts to the left while that
// lowers the count of negations plus nested ⊥. Tautologies yield nullopt.
// Equivalences and role inclusions are returned unchanged.
std::optional<Axiom> beautify(const Axiom& a);

}  // namespace proofforge
