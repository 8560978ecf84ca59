#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "proofforge/el_reasoner.hpp"
#include "proofforge/errors.hpp"

using namespace proofforge;

namespace {
bool derives(const TracedDerivation& d, const char* ax) {
  auto a = parseAxiom(ax);
  return std::find(d.conclusions.begin(), d.conclusions.end(), a) != d.conclusions.end();
}
}  // namespace

TEST_CASE("isELH") {
  CHECK(isELH(parseOntology("sub(A, some(r, B)) subrole(r, s)")));
  CHECK_FALSE(isELH(parseOntology(testing::kFig1Text)));
  CHECK(isELH(Ontology{}));
  CHECK_THROWS_AS(saturate(parseOntology(testing::kFig1Text)), PreconditionViolation);
}

TEST_CASE("saturation examples") {
  auto d = saturate(parseOntology("sub(A, B) sub(B, C)"), parseAxiom("sub(A, C)"));
  CHECK(d.goalReached);
  bool chain = false;
  for (const auto& st : d.pool.steps())
    if (st.conclusion == parseAxiom("sub(A, C)") && st.premises.size() == 2) chain = true;
  CHECK(chain);

  auto d2 = saturate(parseOntology("sub(A, some(r, B)) sub(B, C) sub(some(r, C), D)"));
  CHECK(derives(d2, "sub(A, D)"));
  auto d3 = saturate(parseOntology("sub(A, and(B, C))"));
  CHECK(derives(d3, "sub(A, B)"));
  CHECK(derives(d3, "sub(A, C)"));
  auto d4 = saturate(parseOntology("sub(A, some(r, B)) subrole(r, s) sub(some(s, B), C)"));
  CHECK(derives(d4, "sub(A, C)"));
}

TEST_CASE("no step concludes an input axiom and premises are grounded") {
  auto o = parseOntology("sub(A, some(r, B)) sub(B, C) sub(some(r, C), D) sub(and(A, D), E) equiv(E, F)");
  auto d = saturate(o);
  std::set<Axiom> facts(d.conclusions.begin(), d.conclusions.end());
  for (const auto& st : d.pool.steps()) {
    CHECK_FALSE(o.contains(st.conclusion));
    for (const auto& p : st.premises) CHECK((o.contains(p) || facts.count(p)));
  }
}

TEST_CASE("classify") {
  auto fig1 = classify(parseOntology(testing::kFig1Text));
  auto has = [&](const char* ax) { return std::find(fig1.begin(), fig1.end(), parseAxiom(ax)) != fig1.end(); };
  CHECK(has("sub(A, B)"));
  CHECK(has("sub(C1, C3)"));
  CHECK(has("sub(C2, C3)"));
  CHECK(classify(Ontology{}).empty());
  auto eq = classify(parseOntology("equiv(A, B)"));
  REQUIRE(eq.size() == 2);
  CHECK(eq[0] == parseAxiom("sub(A, B)"));
  CHECK(eq[1] == parseAxiom("sub(B, A)"));
  auto unsat = classify(parseOntology("sub(A, and(B, not(B))) sub(A, C)"));
  REQUIRE(unsat.size() == 1);
  CHECK(unsat[0] == parseAxiom("sub(A, bot)"));
}

TEST_CASE("property: every pool step is sound") {
  testing::Gen g(21);
  for (int i = 0; i < 60; ++i) {
    auto o = g.elhOntology(6, 4);
    auto d = saturate(o);
    for (const auto& st : d.pool.steps()) CHECK(isEntailed(std::span<const Axiom>(st.premises), st.conclusion));
  }
}

TEST_CASE("property: saturation agrees with the tableau on atomic inclusions") {
  testing::Gen g(1234);
  for (int i = 0; i < 500; ++i) {
    auto o = g.elhOntology(12, 6);
    auto d = saturate(o);
    std::set<Axiom> facts(d.conclusions.begin(), d.conclusions.end());
    auto sig = o.signature();
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        if (a == b || !sig.containsConcept("A" + std::to_string(a))) continue;
        auto q = Axiom::gci(Concept::name("A" + std::to_string(a)), Concept::name("A" + std::to_string(b)));
        bool el = facts.count(q) || o.contains(q);
        CHECK_MESSAGE(el == isEntailed(o, q), o.canonicalKey() << "\n? " << q.key());
      }
  }
}
