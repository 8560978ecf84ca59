#include "proofforge/proof.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "proofforge/errors.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

std::vector<int> Proof::producers() const {
  std::vector<int> out(vertices.size(), -1);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    auto c = static_cast<std::size_t>(steps[s].conclusion);
    if (c < out.size() && out[c] < 0) out[c] = static_cast<int>(s);
  }
  return out;
}

Proof Proof::single(const Axiom& a, bool asserted, bool known) {
  Proof p;
  p.vertices.push_back(ProofVertex{0, a, asserted, known});
  p.root = 0;
  return p;
}

// --- InferencePool -------------------------------------------------------------

void InferencePool::addAxiom(const Axiom& a) {
  if (axiomKeys_.insert(a.key()).second) axioms_.push_back(a);
}

bool InferencePool::addStep(PoolStep step) {
  std::sort(step.premises.begin(), step.premises.end());
  step.premises.erase(std::unique(step.premises.begin(), step.premises.end()), step.premises.end());
  std::string key = step.conclusion.key() + " <=";
  for (const auto& p : step.premises) key += " " + p.key();
  key += " | " + step.rule;
  if (!stepKeys_.insert(key).second) return false;
  for (const auto& p : step.premises) addAxiom(p);
  addAxiom(step.conclusion);
  steps_.push_back(std::move(step));
  return true;
}

// --- Measures ----------------------------------------------------------------------

Measure Measure::size() {
  return Measure{Kind::Size, "size", [](const Axiom&) { return 1.0; },
                 [](const Axiom&, std::span<const double> kids) {
                   return 1.0 + std::accumulate(kids.begin(), kids.end(), 0.0);
                 }};
}

Measure Measure::depth() {
  return Measure{Kind::Depth, "depth", [](const Axiom&) { return 0.0; },
                 [](const Axiom&, std::span<const double> kids) {
                   double m = 0.0;
                   for (double k : kids) m = std::max(m, k);
                   return 1.0 + m;
                 }};
}

Measure Measure::weightedSize() {
  return Measure{Kind::WeightedSize, "weightedSize", [](const Axiom& a) { return double(axiomSize(a)); },
                 [](const Axiom& a, std::span<const double> kids) {
                   return double(axiomSize(a)) + std::accumulate(kids.begin(), kids.end(), 0.0);
                 }};
}

std::optional<Measure> Measure::byName(const std::string& name) {
  if (name == "size") return size();
  if (name == "depth") return depth();
  if (name == "weightedSize" || name == "weighted-size") return weightedSize();
  return std::nullopt;
}

namespace {

double measureAt(const Proof& p, const std::vector<int>& prod, int v, const Measure& m, int guard) {
  if (guard > static_cast<int>(p.vertices.size()) + 1) throw PreconditionViolation("proof contains a cycle");
  const auto& vx = p.vertices[static_cast<std::size_t>(v)];
  int s = prod[static_cast<std::size_t>(v)];
  if (s < 0) return m.leafValue(vx.axiom);
  std::vector<double> kids;
  for (int prem : p.steps[static_cast<std::size_t>(s)].premises) kids.push_back(measureAt(p, prod, prem, m, guard + 1));
  return m.combine(vx.axiom, kids);
}

}  // namespace

double measureProof(const Proof& p, const Measure& m) {
  if (p.vertices.empty()) throw PreconditionViolation("empty proof");
  return measureAt(p, p.producers(), p.root, m, 0);
}

int longestPath(const Proof& p) {
  // Explicit-stack DFS over hyperedges, counting edges on the way down.
  auto prod = p.producers();
  int best = 0;
  std::vector<std::pair<int, int>> stack{{p.root, 0}};
  while (!stack.empty()) {
    auto [v, len] = stack.back();
    stack.pop_back();
    best = std::max(best, len);
    int s = prod[static_cast<std::size_t>(v)];
    if (s < 0) continue;
    const auto& st = p.steps[static_cast<std::size_t>(s)];
    if (st.premises.empty()) best = std::max(best, len + 1);
    for (int prem : st.premises) stack.emplace_back(prem, len + 1);
  }
  return best;
}

// --- Checker -------------------------------------------------------------------------

std::string ProofReport::summary() const {
  if (valid()) return "valid";
  std::ostringstream out;
  out << "invalid (" << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) {
    out << "\n  [" << v.kind << "]";
    if (v.vertex >= 0) out << " vertex " << v.vertex;
    if (v.step >= 0) out << " step " << v.step;
    out << ": " << v.message;
  }
  return out.str();
}

namespace {

bool isEliminationRule(const std::string& rule) {
  return rule.rfind("eliminate", 0) == 0 || rule == "normalization";
}

std::vector<Axiom> premiseAxioms(const Proof& p, const ProofStep& st) {
  std::vector<Axiom> out;
  for (int v : st.premises) out.push_back(p.vertices[static_cast<std::size_t>(v)].axiom);
  return out;
}

}  // namespace

ProofReport checkProof(const Proof& p, const Ontology& o, const Axiom& goal, const Signature& known,
                       const CheckOptions& opts) {
  ProofReport rep;
  auto add = [&](std::string kind, int vertex, int step, std::string msg) {
    rep.violations.push_back(Violation{std::move(kind), vertex, step, std::move(msg)});
  };
  const int n = static_cast<int>(p.vertices.size());
  if (n == 0) {
    add("structure", -1, -1, "proof has no vertices");
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (p.vertices[static_cast<std::size_t>(i)].id != i) add("structure", i, -1, "vertex id does not match position");
  if (p.root < 0 || p.root >= n) {
    add("structure", p.root, -1, "root id out of range");
    return rep;
  }
  bool idsOk = true;
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    auto bad = [&](int v) { return v < 0 || v >= n; };
    if (bad(st.conclusion)) {
      add("structure", st.conclusion, static_cast<int>(s), "conclusion id out of range");
      idsOk = false;
    }
    for (int v : st.premises)
      if (bad(v)) {
        add("structure", v, static_cast<int>(s), "premise id out of range");
        idsOk = false;
      }
  }
  if (!idsOk) return rep;

  std::vector<int> concludedBy(static_cast<std::size_t>(n), 0), premiseOf(static_cast<std::size_t>(n), 0);
  for (const auto& st : p.steps) {
    ++concludedBy[static_cast<std::size_t>(st.conclusion)];
    for (int v : st.premises) ++premiseOf[static_cast<std::size_t>(v)];
  }
  for (int v = 0; v < n; ++v) {
    if (concludedBy[static_cast<std::size_t>(v)] > 1) add("structure", v, -1, "vertex is the conclusion of several steps");
    if (premiseOf[static_cast<std::size_t>(v)] > 1) add("tree", v, -1, "vertex is a premise of several steps");
  }
  if (premiseOf[static_cast<std::size_t>(p.root)] > 0) add("root", p.root, -1, "root is used as a premise");

  // Cycle detection and reachability from the root.
  auto prod = p.producers();
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  bool cyclic = false;
  std::function<void(int)> visit = [&](int v) {
    color[static_cast<std::size_t>(v)] = 1;
    int s = prod[static_cast<std::size_t>(v)];
    if (s >= 0) {
      for (int w : p.steps[static_cast<std::size_t>(s)].premises) {
        if (color[static_cast<std::size_t>(w)] == 1) {
          if (!cyclic) add("acyclic", w, s, "vertex is derivable from itself");
          cyclic = true;
        } else if (color[static_cast<std::size_t>(w)] == 0) {
          visit(w);
        }
      }
    }
    color[static_cast<std::size_t>(v)] = 2;
  };
  visit(p.root);
  for (int v = 0; v < n; ++v)
    if (color[static_cast<std::size_t>(v)] == 0) add("structure", v, -1, "vertex not connected to the root");

  if (!(p.vertices[static_cast<std::size_t>(p.root)].axiom == goal))
    add("root", p.root, -1,
        "root is " + p.goal().print(PrintStyle::Unicode) + " but the goal is " + goal.print(PrintStyle::Unicode));

  for (int v = 0; v < n; ++v) {
    if (prod[static_cast<std::size_t>(v)] >= 0) continue;
    const auto& vx = p.vertices[static_cast<std::size_t>(v)];
    std::string shown = vx.axiom.print(PrintStyle::Unicode);
    if (!vx.asserted && !vx.known) {
      add("leaf", v, -1, "leaf " + shown + " is neither asserted nor known");
      continue;
    }
    if (vx.asserted) {
      if (!o.contains(vx.axiom)) add("leaf", v, -1, "leaf " + shown + " is marked asserted but is not in the ontology");
      continue;
    }
    if (!known.includes(vx.axiom.signature())) {
      add("leaf", v, -1, "known leaf " + shown + " uses names outside the known signature");
    } else {
      try {
        if (!isEntailed(o, vx.axiom)) add("leaf", v, -1, "known leaf " + shown + " is not entailed by the ontology");
      } catch (const ResourceLimit&) {
        add("leaf", v, -1, "could not decide entailment of known leaf " + shown);
      }
    }
  }

  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    const auto& concl = p.vertices[static_cast<std::size_t>(st.conclusion)].axiom;
    auto premises = premiseAxioms(p, st);
    if (opts.checkSoundness) {
      try {
        if (!isEntailed(premises, concl))
          add("step", st.conclusion, static_cast<int>(s),
              "premises do not entail " + concl.print(PrintStyle::Unicode) + " (" + st.rule + ")");
      } catch (const ResourceLimit&) {
        add("step", st.conclusion, static_cast<int>(s), "could not decide soundness of step");
      }
    }
    if (opts.eliminationMinimality && isEliminationRule(st.rule)) {
      Signature sig = concl.signature();
      for (const auto& name : st.eliminated)
        if (sig.containsConcept(name) || sig.containsRole(name))
          add("elimination", st.conclusion, static_cast<int>(s), "eliminated name " + name + " occurs in the conclusion");
      for (std::size_t drop = 0; drop < premises.size(); ++drop) {
        std::vector<Axiom> rest;
        for (std::size_t k = 0; k < premises.size(); ++k)
          if (k != drop) rest.push_back(premises[k]);
        if (isEntailed(rest, concl)) {
          add("elimination", st.conclusion, static_cast<int>(s),
              "premise " + premises[drop].print(PrintStyle::Unicode) + " is not needed");
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace proofforge
