// Brute-force oracles and the shared test corpus.
#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "proofforge/el_reasoner.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge::testing {

using KeySet = std::set<std::string>;

inline KeySet keys(const std::vector<Axiom>& axs) {
  KeySet k;
  for (const auto& a : axs) k.insert(a.key());
  return k;
}

// Minimal entailing subsets by plain subset enumeration.
inline std::set<KeySet> bruteForceJustifications(const Ontology& o, const Axiom& goal) {
  const auto& axs = o.axioms();
  const unsigned n = static_cast<unsigned>(axs.size());
  std::vector<unsigned> entailing;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Axiom> sub;
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(axs[i]);
    if (isEntailed(std::span<const Axiom>(sub), goal)) entailing.push_back(mask);
  }
  std::set<KeySet> out;
  for (unsigned m : entailing) {
    bool minimal = true;
    for (unsigned other : entailing)
      if (other != m && (other & m) == other) minimal = false;
    if (!minimal) continue;
    std::vector<Axiom> sub;
    for (unsigned i = 0; i < n; ++i)
      if (m & (1u << i)) sub.push_back(axs[i]);
    out.insert(keys(sub));
  }
  return out;
}

// Minimum measure over every proof in the pool, -1 when there is none.
inline double bruteForceMin(const InferencePool& pool, const Axiom& goal, const std::set<Axiom>& leaves,
                            const Measure& m) {
  double best = -1;
  for (const auto& p : enumerateAllProofs(pool, goal, leaves, 64)) {
    double v = measureProof(p, m);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

struct RandomPool {
  InferencePool pool;
  std::set<Axiom> leaves;
  Axiom goal;
};

// At most 10 axioms and 15 steps.
inline RandomPool randomPool(Gen& g) {
  static const std::vector<Axiom> names = [] {
    std::vector<Axiom> v;
    for (int i = 0; i < 10; ++i) v.push_back(Axiom::gci(Concept::name("x" + std::to_string(i)), Concept::name("G")));
    return v;
  }();
  int nAx = g.uniform(3, 10);
  auto pick = [&] { return names[static_cast<std::size_t>(g.uniform(0, nAx - 1))]; };
  InferencePool pool;
  int nSteps = g.uniform(1, 15);
  for (int s = 0; s < nSteps; ++s) {
    PoolStep st{pick(), {}, "r" + std::to_string(s), {}};
    int k = g.uniform(0, 3);
    for (int j = 0; j < k; ++j) st.premises.push_back(pick());
    pool.addStep(st);
  }
  std::set<Axiom> leaves;
  for (int i = 0; i < nAx; ++i)
    if (g.coin(0.35)) leaves.insert(names[static_cast<std::size_t>(i)]);
  return {std::move(pool), std::move(leaves), pick()};
}

// Worked examples plus random ELH and ALC tasks with a non-asserted atomic goal.
inline std::vector<std::pair<Ontology, Axiom>> corpus() {
  std::vector<std::pair<Ontology, Axiom>> out{
      {parseOntology(readData("fig1.dl")), parseAxiom("sub(A, B)")},
      {parseOntology(readData("merge.dl")), parseAxiom("sub(and(A, some(r, top)), B)")},
  };
  Gen gen(99);
  for (int i = 0; i < 2000 && out.size() < 80; ++i) {
    Ontology o = i % 2 ? gen.elhOntology(8, 5) : gen.alcOntology(6, 4);
    if (!isSatisfiable(o, Concept::top())) continue;
    for (const auto& g : classify(o))
      if (!o.contains(g) && g.rhs().is(Concept::Kind::Name)) {
        out.emplace_back(o, g);
        break;
      }
  }
  return out;
}

}  // namespace proofforge::testing
