// Acceptance report: one PASS/FAIL line per criterion. Exit status 1 if
// any criterion fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "generators.hpp"
#include "oracles.hpp"
#include "proofforge/detailed.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/methods.hpp"
#include "proofforge/service.hpp"

using namespace proofforge;
using namespace proofforge::testing;

namespace {

// Pinned limits, in seconds.
constexpr double kWorkedLimit = 2.0;
constexpr double kMergeLimit = 2.0;
constexpr double kDetailedLimit = 5.0;
constexpr double kExtractLimit = 60.0;
constexpr double kReasonerLimit = 120.0;
constexpr double kForgetLimit = 300.0;
constexpr double kJustifyLimit = 60.0;

constexpr int kExtractPools = 300;
constexpr int kReasonerOntologies = 500;
constexpr int kForgetInputs = 200;
constexpr int kJustifyOntologies = 150;
constexpr int kReportTasks = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckOptions strict() {
  CheckOptions o;
  o.eliminationMinimality = true;
  return o;
}

std::vector<std::string> stepLabels(const Proof& p) {
  std::vector<std::string> out;
  for (const auto& s : p.steps) out.push_back(s.rule);
  std::sort(out.begin(), out.end());
  return out;
}

Outcome workedElimination() {
  Ontology o = parseOntology(readData("fig1.dl"));
  Axiom goal = parseAxiom("sub(A, B)");
  auto t0 = Clock::now();
  Proof p = explain(ExplainRequest(o, goal, Method::ElimHeuristic)).proof;
  double secs = since(t0);
  double size = measureProof(p, Measure::size()), depth = measureProof(p, Measure::depth());
  bool ok = checkProof(p, o, goal, {}, strict()).valid() && size == 7 && depth == 3 &&
            stepLabels(p) == std::vector<std::string>{"eliminate C1", "eliminate C2", "eliminate r, C3"} &&
            secs < kWorkedLimit;
  std::ostringstream d;
  d << "size " << size << ", depth " << depth << ", " << p.steps.size() << " steps, " << secs << " s";
  return {ok, d.str()};
}

Outcome merge() {
  Ontology o = parseOntology(readData("merge.dl"));
  Axiom goal = parseAxiom("sub(and(A, some(r, top)), B)");
  auto t0 = Clock::now();
  Proof p = explain(ExplainRequest(o, goal, Method::ElimHeuristic)).proof;
  double secs = since(t0);
  double size = measureProof(p, Measure::size());
  bool ok = checkProof(p, o, goal, {}, strict()).valid() && size == 3 && p.steps.size() == 1 &&
            p.steps[0].rule == "eliminate B1, B2, B3" && secs < kMergeLimit;
  std::ostringstream d;
  d << "size " << size << ", label \"" << (p.steps.empty() ? "" : p.steps[0].rule) << "\", " << secs << " s";
  return {ok, d.str()};
}

Outcome workedDetailed() {
  Ontology o = parseOntology(readData("fig1.dl"));
  Axiom goal = parseAxiom("sub(A, B)");
  auto t0 = Clock::now();
  Proof p = explain(ExplainRequest(o, goal, Method::Detailed)).proof;
  double secs = since(t0);
  bool definers = false;
  for (const auto& v : p.vertices)
    for (const auto& n : v.axiom.signature().concepts) definers |= isDefinerName(n);
  std::set<Axiom> want{parseAxiom("sub(C1, or(C3, C2))"), parseAxiom("sub(C2, C3)")};
  bool resolution = false;
  for (const auto& s : p.steps) {
    if (!(p.vertices[static_cast<std::size_t>(s.conclusion)].axiom == parseAxiom("sub(C1, C3)"))) continue;
    std::set<Axiom> prem;
    for (int i : s.premises) prem.insert(p.vertices[static_cast<std::size_t>(i)].axiom);
    resolution |= prem == want;
  }
  bool ok = checkProof(p, o, goal).valid() && p.vertices.size() <= 10 && resolution && !definers && secs < kDetailedLimit;
  std::ostringstream d;
  d << p.vertices.size() << " vertices, resolution step " << (resolution ? "present" : "missing") << ", definers "
    << (definers ? "present" : "absent") << ", " << secs << " s";
  return {ok, d.str()};
}

Outcome extraction() {
  Gen g(77);
  auto t0 = Clock::now();
  int compared = 0, mismatches = 0;
  for (int round = 0; round < kExtractPools; ++round) {
    auto [pool, leaves, goal] = randomPool(g);
    for (auto m : {Measure::size(), Measure::depth(), Measure::weightedSize()}) {
      double expected = bruteForceMin(pool, goal, leaves, m);
      ExtractionRequest req(pool, goal);
      req.assertedLeaves = leaves;
      req.measure = m;
      ++compared;
      try {
        mismatches += measureProof(extractOptimal(req), m) != expected;
      } catch (const NoProof&) {
        mismatches += expected >= 0;
      }
    }
  }
  double secs = since(t0);
  std::ostringstream d;
  d << compared << " comparisons, " << mismatches << " mismatches, " << secs << " s";
  return {mismatches == 0 && secs < kExtractLimit, d.str()};
}

Outcome reasoners() {
  Gen g(1234);
  auto t0 = Clock::now();
  int queries = 0, disagreements = 0;
  for (int i = 0; i < kReasonerOntologies; ++i) {
    auto o = g.elhOntology(12, 6);
    auto d = saturate(o);
    std::set<Axiom> facts(d.conclusions.begin(), d.conclusions.end());
    auto sig = o.signature();
    for (const auto& a : sig.concepts)
      for (const auto& b : sig.concepts) {
        if (a == b) continue;
        auto q = Axiom::gci(Concept::name(a), Concept::name(b));
        ++queries;
        disagreements += (facts.count(q) > 0 || o.contains(q)) != isEntailed(o, q);
      }
  }
  double secs = since(t0);
  std::ostringstream d;
  d << queries << " queries, " << disagreements << " disagreements, " << secs << " s";
  return {disagreements == 0 && secs < kReasonerLimit, d.str()};
}

Outcome forgetting() {
  Gen g(2024);
  auto t0 = Clock::now();
  int checks = 0, violations = 0, skipped = 0;
  for (int i = 0; i < kForgetInputs; ++i) {
    Ontology o = g.alcOntology(8, 4, 2, 2);
    Signature sig = o.signature();
    std::vector<std::string> names(sig.concepts.begin(), sig.concepts.end());
    names.insert(names.end(), sig.roles.begin(), sig.roles.end());
    for (const auto& x : names) {
      auto r = forgetName(o, x);
      if (!r) {
        ++skipped;
        continue;
      }
      for (const auto& a : *r) {
        ++checks;
        violations += !isEntailed(o, a);
      }
      Signature rs = r->signature();
      violations += rs.containsConcept(x) || rs.containsRole(x);
      for (const auto& a : sig.concepts) {
        if (a == x) continue;
        std::vector<Concept> rhs{Concept::bottom()};
        for (const auto& b : sig.concepts)
          if (b != x && b != a) rhs.push_back(Concept::name(b));
        for (const auto& b : rhs) {
          Axiom q = Axiom::gci(Concept::name(a), b);
          if (!isEntailed(o, q)) continue;
          ++checks;
          violations += !isEntailed(*r, q);
        }
      }
    }
  }
  double secs = since(t0);
  std::ostringstream d;
  d << checks << " checks, " << violations << " violations, " << skipped << " names not forgettable, " << secs << " s";
  return {violations == 0 && secs < kForgetLimit, d.str()};
}

Outcome justifications() {
  Gen g(314);
  auto t0 = Clock::now();
  int compared = 0, mismatches = 0;
  for (int i = 0; i < kJustifyOntologies; ++i) {
    auto o = g.alcOntology(8, 4, 2);
    for (int k = 0; k < 3; ++k) {
      auto goal = Axiom::gci(Concept::name(g.conceptName(4)), Concept::name(g.conceptName(4)));
      if (!isEntailed(o, goal)) continue;
      std::set<KeySet> got;
      for (const auto& j : computeAllJustifications(o, goal, 1000)) got.insert(keys(j.axioms));
      ++compared;
      mismatches += got != bruteForceJustifications(o, goal);
    }
  }
  double secs = since(t0);
  std::ostringstream d;
  d << compared << " goals, " << mismatches << " mismatches, " << secs << " s";
  return {mismatches == 0 && compared > 0 && secs < kJustifyLimit, d.str()};
}

Outcome soundness() {
  int proofs = 0, invalid = 0, refused = 0;
  for (const auto& [o, goal] : corpus())
    for (const auto& n : methodNames()) {
      try {
        auto r = explain(ExplainRequest(o, goal, *parseMethod(n)));
        ++proofs;
        invalid += !checkProof(r.proof, o, goal, {}, strict()).valid();
      } catch (const PreconditionViolation&) {
        ++refused;
      }
    }
  std::ostringstream d;
  d << proofs << " proofs, " << invalid << " invalid, " << refused << " outside a method's fragment";
  return {invalid == 0 && proofs > 0, d.str()};
}

Outcome cancellation() {
  const char* text =
      "sub(A, only(r, C1)) sub(C1, or(C3, C2)) sub(C2, C4) sub(C3, C4) sub(C4, C5) sub(only(r, C5), B)";
  Ontology o = parseOntology(text);
  Axiom goal = parseAxiom("sub(A, B)");
  JobRunner runner(1);
  std::atomic<int> calls{0};
  std::atomic<int> delayMs{0};
  runner.setExpandHook([&] {
    ++calls;
    std::this_thread::sleep_for(std::chrono::milliseconds(delayMs.load()));
  });
  auto probe = runner.submit(JobSpec("p", o, goal, Method::ElimSizeOptimized));
  runner.wait(probe, std::chrono::seconds(60));
  int total = calls.exchange(0);
  delayMs = 50;
  auto id = runner.submit(JobSpec("p", o, goal, Method::ElimSizeOptimized));
  while (calls < total) std::this_thread::sleep_for(std::chrono::milliseconds(2));
  runner.cancel(id);
  auto snap = runner.wait(id, std::chrono::seconds(60));
  bool ok = snap && snap->state == JobState::Cancelled && snap->resultJson && snap->suboptimal;
  bool valid = false;
  if (ok) valid = checkProof(readJson(*snap->resultJson), o, goal, {}, strict()).valid();
  std::ostringstream d;
  d << "state " << (snap ? jobStateName(snap->state) : "missing") << ", result "
    << (snap && snap->resultJson ? "attached" : "absent") << ", suboptimal " << (snap && snap->suboptimal)
    << ", checker " << (valid ? "valid" : "invalid") << " (cancelled at expansion " << total << ")";
  return {ok && valid, d.str()};
}

// Directional trend only: detailed proofs are at least as large on average.
Outcome sizeReport() {
  Gen g(4242);
  double detailed = 0, heuristic = 0;
  int tasks = 0;
  for (int round = 0; round < 5000 && tasks < kReportTasks; ++round) {
    Ontology o = g.alcOntology(8, 5, 2, 2);
    if (!isSatisfiable(o, Concept::top())) continue;
    std::optional<Axiom> goal;
    for (const auto& a : classify(o))
      if (!o.contains(a) && a.lhs().is(Concept::Kind::Name) && a.rhs().is(Concept::Kind::Name)) {
        goal = a;
        break;
      }
    if (!goal) continue;
    try {
      double d = measureProof(explain(ExplainRequest(o, *goal, Method::Detailed)).proof, Measure::size());
      double h = measureProof(explain(ExplainRequest(o, *goal, Method::ElimHeuristic)).proof, Measure::size());
      detailed += d;
      heuristic += h;
      ++tasks;
    } catch (const Error&) {
    }
  }
  if (tasks == 0) return {false, "no tasks"};
  detailed /= tasks;
  heuristic /= tasks;
  std::ostringstream d;
  d << tasks << " tasks, mean size detailed " << detailed << ", elim-heur " << heuristic;
  return {tasks == kReportTasks && detailed >= heuristic, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"worked elimination proof", workedElimination},
      {"merged elimination step", merge},
      {"worked detailed proof", workedDetailed},
      {"extraction optimality vs brute force", extraction},
      {"tableau and EL saturation agree", reasoners},
      {"forgetting soundness and completeness", forgetting},
      {"justifications vs brute force", justifications},
      {"step soundness over the corpus", soundness},
      {"cancellation returns a checked sub-optimal proof", cancellation},
      {"mean proof size: detailed vs elim-heur (generated ALCH)", sizeReport},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::printf("%s  %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
