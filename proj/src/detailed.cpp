#include "proofforge/detailed.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "proofforge/beautify.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

namespace {

class Display {
 public:
  Display(const InferenceLog& log, const DefinerTable& defs, bool substituteFirst)
      : log_(log), substituteFirst_(substituteFirst) {
    for (const auto& d : defs.names()) defs_.emplace(d, defs.info(d).represents);
  }

  // nullopt for tautologies.
  std::optional<Axiom> node(int id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    const LogNode& n = log_.nodes.at(static_cast<std::size_t>(id));
    std::optional<Axiom> out = n.input ? std::optional<Axiom>(*n.input) : clause(n.clause);
    if (out && isTautology(*out)) out.reset();
    memo_.emplace(id, out);
    return out;
  }

  std::optional<Axiom> clause(const Clause& c) {
    Axiom raw = clauseAxiom(c);
    if (substituteFirst_) return beautify(substituted(raw));
    auto b = beautify(raw);
    if (!b) return std::nullopt;
    return substituted(*b);
  }

 private:
  Axiom substituted(const Axiom& a) const {
    if (a.is(Axiom::Kind::RoleInclusion)) return a;
    Concept l = substitute(a.lhs(), defs_), r = substitute(a.rhs(), defs_);
    return a.is(Axiom::Kind::Equiv) ? Axiom::equiv(l, r) : Axiom::gci(l, r);
  }

  const InferenceLog& log_;
  bool substituteFirst_;
  std::map<std::string, Concept> defs_;
  std::map<int, std::optional<Axiom>> memo_;
};

}  // namespace

bool isAtomicGoal(const Axiom& goal) {
  if (!goal.is(Axiom::Kind::Gci) || !goal.lhs().is(Concept::Kind::Name)) return false;
  return goal.rhs().is(Concept::Kind::Name) || goal.rhs().is(Concept::Kind::Bottom);
}

PoolStep finalClauseToGoal(const std::vector<Clause>& clauses, const Axiom& goal) {
  if (!isAtomicGoal(goal)) throw NotAtomicGoal("goal must have the form A ⊑ B or A ⊑ ⊥");
  const std::string& a = goal.lhs().id();
  std::vector<Clause> wanted{Clause::of({Literal::neg(a)})};
  if (goal.rhs().is(Concept::Kind::Name)) {
    const std::string& b = goal.rhs().id();
    wanted.push_back(Clause::of({Literal::neg(a), Literal::pos(b)}));
    wanted.push_back(Clause::of({Literal::pos(b)}));
  }
  std::optional<Clause> found;
  for (const auto& c : clauses) {
    bool match = std::any_of(wanted.begin(), wanted.end(), [&](const Clause& w) { return w.lits == c.lits; });
    if (match && (!found || c.key() < found->key())) found = c;
  }
  if (!found) throw GoalNotDerived("no final clause yields " + goal.print(PrintStyle::Unicode));
  return PoolStep{goal, {clauseAxiom(*found)}, "conclusion", {}};
}

DetailedResult generateDetailedProof(const Ontology& o, const Axiom& goal, const DetailedOptions& opts) {
  auto progress = [&](const char* phase, double f) {
    if (opts.progress) opts.progress(phase, f);
  };
  if (!isAtomicGoal(goal)) throw NotAtomicGoal("detailed proofs need a goal A ⊑ B or A ⊑ ⊥");
  DetailedResult out;
  if (o.contains(goal)) {
    out.proof = Proof::single(goal, true);
    return out;
  }
  progress("justification", 0.0);
  Justification just = [&] {
    try {
      return computeJustification(o, goal);
    } catch (const PreconditionViolation& e) {
      throw NoProof(e.what());
    }
  }();
  Ontology j(just.axioms);
  if (j.signature().size() > kLargeSignature)
    out.warnings.push_back("justification signature has " + std::to_string(j.signature().size()) +
                           " names; forgetting may time out");

  progress("sequence-search", 0.0);
  ForgetBudget budget = opts.budget;
  budget.cancel = opts.cancel;
  Signature keep;
  keep.concepts = goal.signature().concepts;
  ForgetResult fr = forgetSignature(j, keep, {}, true, budget);
  if (opts.cancel.cancelled()) throw Cancelled();
  for (const auto& n : fr.failedNames) out.warnings.push_back("could not forget " + n);

  progress("step-construction", 0.0);
  const InferenceLog& log = *fr.log;
  Display show(log, *fr.definers, opts.beautifyAfterSubstitution);
  InferencePool pool;
  auto addStep = [&](const Axiom& concl, std::vector<Axiom> premises, const std::string& rule) {
    std::vector<Axiom> kept;
    for (auto& p : premises)
      if (!isTautology(p)) kept.push_back(std::move(p));
    if (std::find(kept.begin(), kept.end(), concl) != kept.end()) return;
    if (kept.empty()) return;
    pool.addStep(PoolStep{concl, std::move(kept), rule, {}});
  };
  for (const auto& e : log.entries) {
    auto concl = show.node(e.conclusion);
    if (!concl || j.contains(*concl)) continue;
    if (e.rule == "Normalize" || e.rule == "DefinerIntro") {
      addStep(*concl, computeJustification(j, *concl).axioms, e.rule);
      continue;
    }
    std::vector<Axiom> premises;
    for (int p : e.premises)
      if (auto a = show.node(p)) premises.push_back(*a);
    addStep(*concl, std::move(premises), e.rule);
  }

  try {
    PoolStep last = finalClauseToGoal(fr.finalClauses, goal);
    for (const auto& c : fr.finalClauses) {
      if (!(clauseAxiom(c) == last.premises.front())) continue;
      auto shown = c.logId >= 0 ? show.node(c.logId) : show.clause(c);
      if (shown && !(*shown == goal)) addStep(goal, {*shown}, "conclusion");
      break;
    }
  } catch (const GoalNotDerived&) {
    // With names left over, the goal may need several final clauses.
    if (fr.failedNames.empty()) throw;
    Ontology finals;
    for (const auto& c : fr.finalClauses)
      if (auto shown = c.logId >= 0 ? show.node(c.logId) : show.clause(c)) finals.add(*shown);
    if (!isEntailed(finals, goal)) throw;
    addStep(goal, computeJustification(finals, goal).axioms, "conclusion");
  }

  progress("extraction", 0.0);
  ExtractionRequest req(pool, goal);
  for (const auto& a : j) req.assertedLeaves.insert(a);
  req.measure = opts.measure;
  req.cancel = opts.cancel;
  req.knownSig = opts.knownSig;
  if (!opts.knownSig.empty()) {
    const Ontology* src = &o;
    req.knownCheck = [src](const Axiom& a) { return isEntailed(*src, a); };
  }
  out.proof = extractOptimal(req);
  progress("extraction", 1.0);
  return out;
}

}  // namespace proofforge
