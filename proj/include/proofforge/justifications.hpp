// Black-box justifications over the tableau oracle.

#pragma once

#include <string>
#include <vector>

#include "proofforge/dl.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

struct Justification {
  std::vector<Axiom> axioms;  // in ontology order
  Axiom goal;
};

// Expand by signature overlap from sig(goal), then contract in reverse
// insertion order. Deterministic for a fixed ontology order.
Justification computeJustification(const Ontology& o, const Axiom& goal, const TableauConfig& cfg = {});

// Hitting-set tree enumeration; stops after `limit` justifications.
std::vector<Justification> computeAllJustifications(const Ontology& o, const Axiom& goal, int limit,
                                                    const TableauConfig& cfg = {});

struct JustificationUnion {
  Ontology ontology;
  bool capped = false;
  std::vector<std::string> warnings;
};

constexpr int kDefaultUnionCap = 64;

JustificationUnion justificationUnion(const Ontology& o, const Axiom& goal, int cap = kDefaultUnionCap,
                                      const TableauConfig& cfg = {});

}  // namespace proofforge
