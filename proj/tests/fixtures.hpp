// Hand-built worked examples shared by several suites.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "proofforge/parser.hpp"
#include "proofforge/proof.hpp"

namespace proofforge::testing {

inline const char* kFig1Text = "sub(A, only(r, C1)) sub(C1, or(C3, C2)) sub(C2, C3) sub(only(r, C3), B)";

inline std::string readData(const std::string& name) {
  std::ifstream in(std::string(PROOFFORGE_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The three elimination steps of the worked elimination proof.
inline Proof fig1Proof() {
  Proof p;
  auto v = [&](const char* ax, bool asserted) {
    int id = static_cast<int>(p.vertices.size());
    p.vertices.push_back(ProofVertex{id, parseAxiom(ax), asserted, false});
    return id;
  };
  int c1c3c2 = v("sub(C1, or(C3, C2))", true);
  int c2c3 = v("sub(C2, C3)", true);
  int c1c3 = v("sub(C1, C3)", false);
  int arc1 = v("sub(A, only(r, C1))", true);
  int arc3 = v("sub(A, only(r, C3))", false);
  int rc3b = v("sub(only(r, C3), B)", true);
  int ab = v("sub(A, B)", false);
  p.steps.push_back(ProofStep{c1c3, {c1c3c2, c2c3}, "eliminate C2", {"C2"}});
  p.steps.push_back(ProofStep{arc3, {arc1, c1c3}, "eliminate C1", {"C1"}});
  p.steps.push_back(ProofStep{ab, {arc3, rc3b}, "eliminate r, C3", {"r", "C3"}});
  p.root = ab;
  return p;
}

inline InferencePool poolOf(const Proof& p) {
  InferencePool pool;
  for (const auto& st : p.steps) {
    PoolStep ps{p.vertices[static_cast<std::size_t>(st.conclusion)].axiom, {}, st.rule, st.eliminated};
    for (int prem : st.premises) ps.premises.push_back(p.vertices[static_cast<std::size_t>(prem)].axiom);
    pool.addStep(ps);
  }
  return pool;
}

}  // namespace proofforge::testing
