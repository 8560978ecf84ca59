// Measure-optimal tree proofs from an inference pool.

#pragma once

#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "proofforge/errors.hpp"
#include "proofforge/proof.hpp"

namespace proofforge {

// Thrown when a request is cancelled. Carries the best proof assembled so
// far (flagged suboptimal) if the goal had already been reached.
class Cancelled : public Error {
 public:
  explicit Cancelled(std::shared_ptr<const Proof> best = nullptr)
      : Error(best ? "cancelled; best proof so far attached" : "cancelled"), best_(std::move(best)) {}
  const std::shared_ptr<const Proof>& best() const { return best_; }

 private:
  std::shared_ptr<const Proof> best_;
};

struct ExtractionRequest {
  ExtractionRequest(const InferencePool& p, Axiom g) : pool(&p), goal(std::move(g)) {}

  const InferencePool* pool;
  Axiom goal;
  std::set<Axiom> assertedLeaves;
  Signature knownSig;
  // Decides whether a candidate axiom over knownSig is entailed and so may
  // be used as a known leaf. Called at most once per axiom.
  std::function<bool(const Axiom&)> knownCheck;
  Measure measure = Measure::size();
  CancelToken cancel;
};

Proof extractOptimal(const ExtractionRequest& req);

// Exhaustive oracle: every tree proof of goal with at most `bound`
// vertices in which no axiom repeats along a root path.
std::vector<Proof> enumerateAllProofs(const InferencePool& pool, const Axiom& goal,
                                      const std::set<Axiom>& assertedLeaves, int bound);

}  // namespace proofforge
