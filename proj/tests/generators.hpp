// Seeded random generators shared by the property tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "proofforge/dl.hpp"

namespace proofforge::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937& rng() { return rng_; }

  std::string conceptName(int names) { return "A" + std::to_string(uniform(0, names - 1)); }
  std::string roleName(int roles) { return "r" + std::to_string(uniform(0, roles - 1)); }

  // Full ALC concept grammar.
  Concept alc(int depth, int names, int roles = 2) {
    if (depth <= 0 || coin(0.3)) {
      int pick = uniform(0, 9);
      if (pick == 0) return Concept::top();
      if (pick == 1) return Concept::bottom();
      return Concept::name(conceptName(names));
    }
    switch (uniform(0, 4)) {
      case 0: return Concept::negation(alc(depth - 1, names, roles));
      case 1: return Concept::conjunction({alc(depth - 1, names, roles), alc(depth - 1, names, roles)});
      case 2: return Concept::disjunction({alc(depth - 1, names, roles), alc(depth - 1, names, roles)});
      case 3: return Concept::exists(roleName(roles), alc(depth - 1, names, roles));
      default: return Concept::forall(roleName(roles), alc(depth - 1, names, roles));
    }
  }

  Axiom alcAxiom(int depth, int names, int roles = 2) {
    int pick = uniform(0, 9);
    if (pick == 0) return Axiom::roleInclusion(roleName(roles), roleName(roles));
    if (pick == 1) return Axiom::equiv(alc(depth, names, roles), alc(depth, names, roles));
    return Axiom::gci(alc(depth, names, roles), alc(depth, names, roles));
  }

  // ⊓ / ∃ / ⊤ / names only.
  Concept el(int depth, int names, int roles = 2) {
    if (depth <= 0 || coin(0.45)) {
      if (uniform(0, 12) == 0) return Concept::top();
      return Concept::name(conceptName(names));
    }
    if (coin()) return Concept::conjunction({el(depth - 1, names, roles), el(depth - 1, names, roles)});
    return Concept::exists(roleName(roles), el(depth - 1, names, roles));
  }

  Ontology elhOntology(int maxAxioms, int names, int roles = 2) {
    Ontology o;
    int n = uniform(1, maxAxioms);
    for (int i = 0; i < n; ++i) {
      int pick = uniform(0, 11);
      if (pick == 0) {
        o.add(Axiom::roleInclusion(roleName(roles), roleName(roles)));
      } else if (pick == 1) {
        o.add(Axiom::equiv(el(1, names, roles), el(2, names, roles)));
      } else {
        o.add(Axiom::gci(el(2, names, roles), el(2, names, roles)));
      }
    }
    return o;
  }

  Ontology alcOntology(int maxAxioms, int names, int depth = 2, int roles = 2) {
    Ontology o;
    int n = uniform(1, maxAxioms);
    for (int i = 0; i < n; ++i) o.add(alcAxiom(depth, names, roles));
    return o;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace proofforge::testing
