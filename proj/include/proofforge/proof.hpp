// Tree-shaped proofs and the inference pools they are extracted from.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "proofforge/dl.hpp"

namespace proofforge {

struct ProofVertex {
  int id = 0;
  Axiom axiom;
  bool asserted = false;
  bool known = false;
};

struct ProofStep {
  int conclusion = 0;
  std::vector<int> premises;
  std::string rule;
  std::vector<std::string> eliminated;
};

// Vertex ids equal their index in `vertices`.
struct Proof {
  std::vector<ProofVertex> vertices;
  std::vector<ProofStep> steps;
  int root = 0;
  bool suboptimal = false;

  const Axiom& goal() const { return vertices.at(static_cast<std::size_t>(root)).axiom; }
  // Step concluding each vertex, or -1 for leaves.
  std::vector<int> producers() const;

  static Proof single(const Axiom& a, bool asserted, bool known = false);
};

// Candidate inference steps over axioms; several may share a conclusion.
struct PoolStep {
  Axiom conclusion;
  std::vector<Axiom> premises;  // sorted, no duplicates
  std::string rule;
  std::vector<std::string> eliminated;
};

class InferencePool {
 public:
  void addAxiom(const Axiom& a);
  // Premises are normalized; exact duplicates are ignored. Returns whether
  // the step was new.
  bool addStep(PoolStep step);

  const std::vector<Axiom>& axioms() const { return axioms_; }
  const std::vector<PoolStep>& steps() const { return steps_; }
  bool containsAxiom(const Axiom& a) const { return axiomKeys_.count(a.key()) != 0; }
  std::size_t size() const { return steps_.size(); }

 private:
  std::vector<Axiom> axioms_;
  std::set<std::string> axiomKeys_;
  std::vector<PoolStep> steps_;
  std::set<std::string> stepKeys_;
};

// A recursive measure: leaves get leafValue, an inner vertex combines the
// values of its premises. combine must be nondecreasing in every argument
// and strictly above each of them for optimal extraction to apply.
struct Measure {
  enum class Kind { Size, Depth, WeightedSize, Custom };
  Kind kind = Kind::Size;
  std::string name;
  std::function<double(const Axiom&)> leafValue;
  std::function<double(const Axiom&, std::span<const double>)> combine;

  static Measure size();
  static Measure depth();
  static Measure weightedSize();
  static std::optional<Measure> byName(const std::string& name);
};

double measureProof(const Proof& p, const Measure& m);

struct Violation {
  std::string kind;
  int vertex = -1;
  int step = -1;
  std::string message;
};

struct ProofReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  std::string summary() const;
};

struct CheckOptions {
  // For steps labeled "eliminate ..." or "normalization": no proper subset
  // of the premises entails the conclusion, and eliminated names are
  // absent from it.
  bool eliminationMinimality = false;
  bool checkSoundness = true;
};

ProofReport checkProof(const Proof& p, const Ontology& o, const Axiom& goal, const Signature& known = {},
                       const CheckOptions& opts = {});

std::string writeJson(const Proof& p);
// roleNames disambiguates `x ⊑ y` between bare names; roles mentioned in
// restrictions anywhere in the document are picked up automatically.
Proof readJson(const std::string& text, const std::set<std::string>& roleNames = {});
std::string writeDot(const Proof& p);

// Independent longest hyperedge chain from the root; cross-checks depth.
int longestPath(const Proof& p);

}  // namespace proofforge
