#include "proofforge/methods.hpp"

#include <array>

#include "proofforge/detailed.hpp"
#include "proofforge/el_reasoner.hpp"
#include "proofforge/elimination.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

namespace {

const std::array<std::pair<Method, const char*>, 6> kNames{{
    {Method::ElkSize, "elk-size"},
    {Method::ElkDepth, "elk-depth"},
    {Method::ElimHeuristic, "elim-heur"},
    {Method::ElimNameOptimized, "elim-name-opt"},
    {Method::ElimSizeOptimized, "elim-size-opt"},
    {Method::Detailed, "detailed"},
}};

ExplainResult viaSaturation(const ExplainRequest& req, const Measure& measure) {
  auto report = [&](const char* phase, double f) {
    if (req.progress) req.progress(phase, f);
  };
  report("justification", 0.0);
  JustificationUnion u = justificationUnion(req.ontology, req.goal);
  if (!isELH(u.ontology) || !isELH(req.goal))
    throw UnsupportedInput("the justifications of this goal are not in ELH; use an elim-* method or detailed");
  report("sequence-search", 0.0);
  TracedDerivation d = saturate(u.ontology, req.goal);
  report("extraction", 0.0);
  ExtractionRequest x(d.pool, req.goal);
  x.assertedLeaves = std::set<Axiom>(u.ontology.begin(), u.ontology.end());
  x.measure = measure;
  x.cancel = req.cancel;
  x.knownSig = req.knownSig;
  if (!req.knownSig.empty()) {
    const Ontology* o = &req.ontology;
    x.knownCheck = [o](const Axiom& a) { return isEntailed(*o, a); };
  }
  ExplainResult out{extractOptimal(x), u.warnings};
  report("extraction", 1.0);
  return out;
}

}  // namespace

std::optional<Method> parseMethod(const std::string& name) {
  for (const auto& [m, n] : kNames)
    if (name == n) return m;
  return std::nullopt;
}

std::string methodName(Method m) {
  for (const auto& [k, n] : kNames)
    if (k == m) return n;
  return "?";
}

const std::vector<std::string>& methodNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& kn : kNames) v.push_back(kn.second);
    return v;
  }();
  return names;
}

ExplainResult explain(const ExplainRequest& req) {
  if (!isEntailed(req.ontology, req.goal))
    throw NoProof("not entailed: " + req.goal.print(PrintStyle::Unicode));
  Measure measure = req.measure.value_or(req.method == Method::ElkDepth ? Measure::depth() : Measure::size());
  switch (req.method) {
    case Method::ElkSize:
    case Method::ElkDepth: return viaSaturation(req, measure);
    case Method::Detailed: {
      DetailedOptions opts;
      opts.measure = measure;
      opts.knownSig = req.knownSig;
      opts.cancel = req.cancel;
      opts.budget = req.budget;
      opts.progress = req.progress;
      auto r = generateDetailedProof(req.ontology, req.goal, opts);
      return ExplainResult{std::move(r.proof), std::move(r.warnings)};
    }
    default: {
      EliminationTask task(req.ontology, req.goal);
      task.strategy = req.method == Method::ElimHeuristic      ? Strategy::Heuristic
                      : req.method == Method::ElimNameOptimized ? Strategy::NameOptimized
                                                                : Strategy::SizeOptimized;
      task.optimizeMeasure = measure;
      task.budget = req.budget;
      task.cancel = req.cancel;
      task.knownSig = req.knownSig;
      task.onExpand = req.onExpand;
      task.progress = req.progress;
      return ExplainResult{generateEliminationProof(task), {}};
    }
  }
}

}  // namespace proofforge
