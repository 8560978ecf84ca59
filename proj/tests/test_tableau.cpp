#include "doctest.h"
#include "generators.hpp"
#include "proofforge/parser.hpp"
#include "proofforge/tableau.hpp"

using namespace proofforge;

namespace {
const char* kFig1 = "sub(A, only(r, C1)) sub(C1, or(C3, C2)) sub(C2, C3) sub(only(r, C3), B)";
}

TEST_CASE("satisfiability examples") {
  auto fig1 = parseOntology(kFig1);
  CHECK_FALSE(isSatisfiable(fig1, parseConcept("and(A, not(B))")));
  CHECK_FALSE(isSatisfiable(Ontology{}, parseConcept("and(C3, not(C3))")));
  // A single looping node: blocking has to stop the ∃ chain.
  CHECK(isSatisfiable(parseOntology("sub(A, some(r, A))"), parseConcept("A")));
  CHECK(isSatisfiable(fig1, parseConcept("A")));
}

TEST_CASE("entailment examples") {
  auto fig1 = parseOntology(kFig1);
  CHECK(isEntailed(fig1, parseAxiom("sub(A, B)")));
  CHECK(isEntailed(parseOntology("sub(A, only(r, C1)) sub(C1, C3)"), parseAxiom("sub(A, only(r, C3))")));
  CHECK_FALSE(isEntailed(parseOntology("sub(A, B)"), parseAxiom("sub(B, A)")));
  CHECK(isEntailed(parseOntology("equiv(A, B)"), parseAxiom("equiv(B, A)")));
  CHECK(isEntailed(parseOntology("subrole(r, s) subrole(s, t)"), parseAxiom("subrole(r, t)")));
}

TEST_CASE("entailsAll is a short-circuiting conjunction") {
  auto fig1 = parseOntology(kFig1);
  std::vector<Axiom> both{parseAxiom("sub(A, B)"), parseAxiom("sub(C1, C3)")};
  CHECK(entailsAll(fig1, both));
  CHECK(entailsAll(fig1, std::vector<Axiom>{}));
  std::vector<Axiom> mixed{parseAxiom("sub(A, B)"), parseAxiom("sub(B, A)")};
  CHECK_FALSE(entailsAll(parseOntology("sub(A, B)"), mixed));
}

TEST_CASE("role hierarchy feeds ∀ propagation") {
  auto o = parseOntology("sub(A, some(r, C)) sub(A, only(s, not(C))) subrole(r, s)");
  CHECK_FALSE(isSatisfiable(o, parseConcept("A")));
  auto o2 = parseOntology("sub(A, some(s, C)) sub(A, only(r, not(C))) subrole(r, s)");
  CHECK(isSatisfiable(o2, parseConcept("A")));
}

TEST_CASE("classic hard-ish cases") {
  // Exhaustive case split over a disjunction.
  CHECK(isEntailed(parseOntology("sub(A, or(B, C)) sub(B, D) sub(C, D)"), parseAxiom("sub(A, D)")));
  // Existential needs the ∀ from the TBox.
  CHECK(isEntailed(parseOntology("sub(top, only(r, B)) sub(some(r, B), C)"), parseAxiom("sub(some(r, top), C)")));
  CHECK(isEntailed(Ontology{}, parseAxiom("sub(bot, A)")));
  CHECK(isEntailed(Ontology{}, parseAxiom("sub(A, top)")));
  CHECK(isTautology(parseAxiom("sub(and(C3, not(C3)), bot)")));
  CHECK_FALSE(isTautology(parseAxiom("sub(A, B)")));
}

TEST_CASE("node limit surfaces as a resource error") {
  auto o = parseOntology("sub(top, some(r, A)) sub(top, some(r, B)) sub(top, some(s, C))");
  TableauConfig tiny;
  tiny.maxNodes = 2;
  CHECK_THROWS_AS(isSatisfiable(o, parseConcept("A"), tiny), ResourceLimit);
}

TEST_CASE("property: entailment is monotone in the ontology") {
  testing::Gen g(42);
  for (int i = 0; i < 150; ++i) {
    Ontology small = g.alcOntology(4, 4, 2);
    Ontology big = small;
    int extra = g.uniform(1, 3);
    for (int k = 0; k < extra; ++k) big.add(g.alcAxiom(2, 4));
    for (int k = 0; k < 4; ++k) {
      Axiom q = Axiom::gci(Concept::name(g.conceptName(4)), Concept::name(g.conceptName(4)));
      if (isEntailed(small, q)) CHECK(isEntailed(big, q));
    }
  }
}

TEST_CASE("property: tableau agrees with a brute-force model check on propositional TBoxes") {
  // Without roles, A ⊑ B holds iff every valuation satisfying the TBox
  // with A true also makes B true.
  testing::Gen g(5);
  auto eval = [](const Concept& c, unsigned val, auto& self) -> bool {
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::Top: return true;
      case K::Bottom: return false;
      case K::Name: return (val >> (c.id()[1] - '0')) & 1u;
      case K::Not: return !self(c.filler(), val, self);
      case K::And:
        for (const auto& op : c.operands())
          if (!self(op, val, self)) return false;
        return true;
      case K::Or:
        for (const auto& op : c.operands())
          if (self(op, val, self)) return true;
        return false;
      default: return false;
    }
  };
  auto prop = [&](int depth) {
    std::function<Concept(int)> mk = [&](int d) -> Concept {
      if (d == 0 || g.coin(0.3)) return Concept::name(g.conceptName(5));
      switch (g.uniform(0, 2)) {
        case 0: return Concept::negation(mk(d - 1));
        case 1: return Concept::conjunction({mk(d - 1), mk(d - 1)});
        default: return Concept::disjunction({mk(d - 1), mk(d - 1)});
      }
    };
    return mk(depth);
  };
  for (int i = 0; i < 200; ++i) {
    Ontology o;
    int n = g.uniform(1, 5);
    for (int k = 0; k < n; ++k) o.add(Axiom::gci(prop(2), prop(2)));
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        Concept ca = Concept::name("A" + std::to_string(a)), cb = Concept::name("A" + std::to_string(b));
        bool expected = true;
        for (unsigned val = 0; val < 32 && expected; ++val) {
          bool model = true;
          for (const auto& ax : o)
            if (eval(ax.lhs(), val, eval) && !eval(ax.rhs(), val, eval)) model = false;
          if (model && eval(ca, val, eval) && !eval(cb, val, eval)) expected = false;
        }
        CHECK(isEntailed(o, Axiom::gci(ca, cb)) == expected);
      }
  }
}
