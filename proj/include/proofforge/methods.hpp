// The six proof generation methods behind one entry point.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/proof.hpp"

namespace proofforge {

enum class Method { ElkSize, ElkDepth, ElimHeuristic, ElimNameOptimized, ElimSizeOptimized, Detailed };

// Thrown when a method cannot handle the input, e.g. elk-* outside ELH.
class UnsupportedInput : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

std::optional<Method> parseMethod(const std::string& name);
std::string methodName(Method m);
const std::vector<std::string>& methodNames();

struct ExplainRequest {
  ExplainRequest(Ontology o, Axiom g, Method m) : ontology(std::move(o)), goal(std::move(g)), method(m) {}

  Ontology ontology;
  Axiom goal;
  Method method;
  Signature knownSig;
  // Defaults: depth for elk-depth, size otherwise.
  std::optional<Measure> measure;
  CancelToken cancel;
  ForgetBudget budget = ForgetBudget::fromEnvironment();
  std::function<void(const std::string& phase, double fraction)> progress;
  std::function<void()> onExpand;
};

struct ExplainResult {
  Proof proof;
  std::vector<std::string> warnings;
};

// Throws NoProof when the goal is not entailed, UnsupportedInput when the
// method does not apply, and Cancelled as the extraction contract says.
ExplainResult explain(const ExplainRequest& req);

}  // namespace proofforge
