#include "doctest.h"
#include "generators.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/parser.hpp"

using namespace proofforge;

namespace {
Concept N(const char* n) { return Concept::name(n); }
}  // namespace

TEST_CASE("parse maps the functional syntax onto axioms") {
  CHECK(parseAxiom("sub(A, only(r, C1))") == Axiom::gci(N("A"), Concept::forall("r", N("C1"))));
  CHECK(parseAxiom("equiv(A, B)") == Axiom::equiv(N("A"), N("B")));
  CHECK(parseAxiom("subrole(r, s)") == Axiom::roleInclusion("r", "s"));
  CHECK_THROWS_AS(parseAxiom("sub(A)"), ParseError);
}

TEST_CASE("parse errors carry position and expected tokens") {
  try {
    parseOntology("sub(A, B)\nsub(A)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
    REQUIRE(e.expected().size() == 1);
    CHECK(e.expected()[0] == "','");
  }
  CHECK_THROWS_AS(parseOntology("sub(A, B) $"), ParseError);
  CHECK_THROWS_AS(parseOntology("sub(top, and(A))"), ParseError);
  CHECK_THROWS_AS(parseOntology("sub(some, A)"), ParseError);
}

TEST_CASE("ontology keeps file order, skips comments and deduplicates with a warning") {
  auto o = parseOntology("# header\nsub(B, C)  # trailing\nsub(A, B)\nsub(and(C, D), E) sub(B, C)\n");
  REQUIRE(o.size() == 3);
  CHECK(o.axioms()[0].key() == "sub(B, C)");
  CHECK(o.axioms()[1].key() == "sub(A, B)");
  CHECK(o.axioms()[2].key() == "sub(and(C, D), E)");
  REQUIRE(o.warnings().size() == 1);
  CHECK(o.warnings()[0].find("line 4") != std::string::npos);
}

TEST_CASE("conjunctions are canonical modulo order and nesting") {
  auto a = parseConcept("and(B, A, and(C, A))");
  auto b = parseConcept("and(C, and(A, B))");
  CHECK(a == b);
  CHECK(a.key() == "and(A, B, C)");
  CHECK(parseConcept("or(A, A)") == N("A"));
}

TEST_CASE("printing in both styles") {
  auto fig = Axiom::gci(N("A"), Concept::forall("r", N("C1")));
  CHECK(printAxiom(fig, PrintStyle::Unicode) == "A ⊑ ∀r.C1");
  auto gci = Axiom::gci(Concept::conjunction({N("A"), Concept::exists("r", Concept::top())}), N("B"));
  CHECK(printAxiom(gci, PrintStyle::Ascii) == "sub(and(A, some(r, top)), B)");
  CHECK(printAxiom(Axiom::roleInclusion("r", "s"), PrintStyle::Unicode) == "r ⊑ s");
  auto nested = Axiom::gci(N("A"), Concept::disjunction({N("B"), Concept::exists("r", parseConcept("and(C1, not(C3))"))}));
  CHECK(printAxiom(nested, PrintStyle::Unicode) == "A ⊑ B ⊔ ∃r.(C1 ⊓ ¬C3)");
}

TEST_CASE("nnf pushes negation to names") {
  CHECK(nnf(parseConcept("not(only(r, C))")) == parseConcept("some(r, not(C))"));
  CHECK(nnf(parseConcept("not(and(A, B))")) == parseConcept("or(not(A), not(B))"));
  CHECK(nnf(Concept::negation(Concept::top())) == Concept::bottom());
  CHECK(nnf(parseConcept("not(not(A))")) == N("A"));
}

TEST_CASE("role hierarchy closure") {
  auto o = parseOntology("subrole(r, s) subrole(s, t)");
  CHECK(roleSubsumes(o, "r", "t"));
  CHECK(roleSubsumes(o, "r", "r"));
  CHECK(roleSubsumes(Ontology{}, "q", "q"));
  CHECK_FALSE(roleSubsumes(o, "s", "r"));
}

TEST_CASE("axiom size counts syntax-tree nodes") {
  CHECK(axiomSize(parseAxiom("sub(A, B)")) == 3);
  CHECK(axiomSize(parseAxiom("sub(A, only(r, C1))")) == 5);
  CHECK(axiomSize(parseAxiom("subrole(r, s)")) == 3);
  CHECK(axiomSize(parseAxiom("equiv(A, and(B, C))")) == 5);
}

TEST_CASE("display syntax reads back what print writes") {
  auto a = parseDisplayAxiom("A ⊓ ∃r.⊤ ⊑ B ⊔ ∀s.(C ⊓ ¬D)");
  CHECK(a == parseAxiom("sub(and(A, some(r, top)), or(B, only(s, and(C, not(D)))))"));
  CHECK(parseDisplayAxiom("r ⊑ s", {"r", "s"}) == Axiom::roleInclusion("r", "s"));
  CHECK(parseDisplayAxiom("r ⊑ s") == parseAxiom("sub(r, s)"));
  CHECK(parseDisplayAxiom("A ≡ ⊥").is(Axiom::Kind::Equiv));
  CHECK_THROWS_AS(parseDisplayAxiom("A ⊑"), ParseError);
}

TEST_CASE("property: parse inverts print on random axioms") {
  testing::Gen g(7);
  for (int i = 0; i < 1000; ++i) {
    Axiom a = g.alcAxiom(g.uniform(0, 5), 8);
    CHECK(parseAxiom(printAxiom(a, PrintStyle::Ascii)) == a);
    std::set<std::string> roles;
    if (a.is(Axiom::Kind::RoleInclusion)) roles = {a.sub(), a.sup()};
    CHECK(parseDisplayAxiom(printAxiom(a, PrintStyle::Unicode), roles) == a);
  }
}

TEST_CASE("property: nnf is idempotent and respects double negation") {
  testing::Gen g(11);
  for (int i = 0; i < 500; ++i) {
    Concept c = g.alc(g.uniform(0, 5), 8);
    Concept n = nnf(c);
    CHECK(nnf(n) == n);
    CHECK(nnf(Concept::negation(nnf(Concept::negation(c)))) == n);
  }
}

TEST_CASE("property: role subsumption is a preorder") {
  testing::Gen g(3);
  for (int i = 0; i < 200; ++i) {
    Ontology o;
    int n = g.uniform(0, 6);
    for (int k = 0; k < n; ++k) o.add(Axiom::roleInclusion(g.roleName(5), g.roleName(5)));
    RoleHierarchy h(o);
    for (int a = 0; a < 5; ++a) {
      auto ra = "r" + std::to_string(a);
      CHECK(h.subsumes(ra, ra));
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c) {
          auto rb = "r" + std::to_string(b), rc = "r" + std::to_string(c);
          if (h.subsumes(ra, rb) && h.subsumes(rb, rc)) CHECK(h.subsumes(ra, rc));
        }
    }
  }
}
