#include "proofforge/elimination.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "proofforge/extract.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

namespace {

struct Occurrences {
  std::map<std::string, int> total;
  std::map<std::string, int> underRestriction;
  // Roles seen with a filler other than ⊤ (∃) or ⊥ (∀).
  std::set<std::string> nonTrivialRoles;
};

void scan(const Concept& c, int depth, Occurrences& occ) {
  switch (c.kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Bottom: return;
    case Concept::Kind::Name:
      ++occ.total[c.id()];
      if (depth > 0) ++occ.underRestriction[c.id()];
      return;
    case Concept::Kind::Not: scan(c.filler(), depth, occ); return;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      for (const auto& op : c.operands()) scan(op, depth, occ);
      return;
    case Concept::Kind::Exists:
    case Concept::Kind::Forall: {
      ++occ.total[c.role()];
      if (depth > 0) ++occ.underRestriction[c.role()];
      bool trivial = c.is(Concept::Kind::Exists) ? c.filler().is(Concept::Kind::Top) : c.filler().is(Concept::Kind::Bottom);
      if (!trivial) occ.nonTrivialRoles.insert(c.role());
      scan(c.filler(), depth + 1, occ);
      return;
    }
  }
}

Occurrences occurrences(const Ontology& o) {
  Occurrences occ;
  for (const auto& a : o) {
    if (a.is(Axiom::Kind::RoleInclusion)) {
      ++occ.total[a.sub()];
      ++occ.total[a.sup()];
      occ.nonTrivialRoles.insert(a.sub());
      occ.nonTrivialRoles.insert(a.sup());
      continue;
    }
    scan(a.lhs(), 0, occ);
    scan(a.rhs(), 0, occ);
  }
  return occ;
}

std::string joinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

std::string ruleFor(const std::vector<std::string>& eliminated) {
  return eliminated.empty() ? "normalization" : "eliminate " + joinNames(eliminated);
}

Signature premiseSignature(const std::vector<Axiom>& premises) {
  Signature s;
  for (const auto& a : premises) s.merge(a.signature());
  return s;
}

bool inSignature(const Signature& s, const std::string& n) { return s.containsConcept(n) || s.containsRole(n); }

std::vector<std::string> vanished(const Ontology& before, const Ontology& after) {
  Signature a = before.signature(), b = after.signature();
  std::vector<std::string> out;
  for (const auto& c : a.concepts)
    if (!b.containsConcept(c)) out.push_back(c);
  for (const auto& r : a.roles)
    if (!b.containsRole(r)) out.push_back(r);
  return orderNames(std::move(out), a);
}

std::set<std::string> stageEligible(const Ontology& stage, const Signature& goalSig,
                                    const std::set<std::string>& failed) {
  std::set<std::string> out;
  for (const auto& n : eligibleNames(stage, goalSig))
    if (!failed.count(n)) out.insert(n);
  return out;
}

// One search state: a sequence prefix and the names whose elimination
// failed along it.
struct Node {
  OntologySequence seq;
  std::set<std::string> failed;

  const Ontology& last() const { return seq.stages.back(); }
  std::string key() const {
    std::string k = last().canonicalKey() + "\n#failed";
    for (const auto& f : failed) k += " " + f;
    return k;
  }
};

class Search {
 public:
  explicit Search(const EliminationTask& task) : task_(task), goalSig_(task.goal.signature()) {
    budget_ = task.budget;
    budget_.cancel = task.cancel;
  }

  std::set<std::string> eligible(const Node& n) const { return stageEligible(n.last(), goalSig_, n.failed); }

  // Eliminates `name` from the last stage. After a concept elimination,
  // roles that became eligible are forgotten into the same stage.
  Node move(const Node& n, const std::string& name) const {
    Node next = n;
    auto forgotten = forgetName(n.last(), name, budget_);
    if (!forgotten) {
      next.failed.insert(name);
      return next;
    }
    Ontology stage = std::move(*forgotten);
    if (n.last().signature().containsConcept(name)) {
      Signature sig = stage.signature();
      for (const auto& r : sig.roles) {
        if (next.failed.count(r) || !stageEligible(stage, goalSig_, next.failed).count(r)) continue;
        if (auto g = forgetName(stage, r, budget_)) stage = std::move(*g);
        else next.failed.insert(r);
      }
    }
    next.seq.eliminatedAt.push_back(vanished(n.last(), stage));
    next.seq.stages.push_back(std::move(stage));
    return next;
  }

  std::string pickHeuristic(const Node& n) const {
    auto names = eligible(n);
    Occurrences occ = occurrences(n.last());
    Signature sig = n.last().signature();
    auto rank = [&](const std::string& x) {
      return std::make_tuple(occ.total[x], sig.containsRole(x) && !sig.containsConcept(x), occ.underRestriction[x], x);
    };
    return *std::min_element(names.begin(), names.end(),
                             [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
  }

  Node heuristic(const Node& start) const {
    Node cur = start;
    while (!eligible(cur).empty()) {
      if (task_.cancel.cancelled()) throw Cancelled();
      if (task_.onExpand) task_.onExpand();
      cur = move(cur, pickHeuristic(cur));
    }
    return cur;
  }

  // Uniform-cost search on the number of stages, seeded with the heuristic
  // sequence as incumbent.
  Node nameOptimized(const Node& start) const {
    Node best = heuristic(start);
    using Entry = std::tuple<std::size_t, std::size_t, std::size_t>;  // f, -depth tie, id
    std::vector<Node> nodes{start};
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    auto h = [&](const Node& n) -> std::size_t { return eligible(n).empty() ? 0 : 1; };
    auto g = [](const Node& n) { return n.seq.stages.size() - 1; };
    open.emplace(g(start) + h(start), 0, 0);
    std::map<std::string, std::size_t> seen{{start.key(), 0}};
    std::size_t expansions = 0;
    while (!open.empty()) {
      auto [f, tie, id] = open.top();
      open.pop();
      if (f >= best.seq.stages.size()) break;
      const Node cur = nodes[id];
      if (eligible(cur).empty()) {
        best = cur;
        break;
      }
      if (task_.cancel.cancelled()) return best;
      if (task_.onExpand) task_.onExpand();
      if (++expansions > task_.maxExpansions) break;
      report(static_cast<double>(expansions) / static_cast<double>(task_.maxExpansions));
      for (const auto& name : eligible(cur)) {
        Node next = move(cur, name);
        auto [it, fresh] = seen.emplace(next.key(), g(next));
        if (!fresh && it->second <= g(next)) continue;
        it->second = g(next);
        nodes.push_back(std::move(next));
        const Node& added = nodes.back();
        open.emplace(g(added) + h(added), static_cast<std::size_t>(-1) - added.seq.stages.size(), nodes.size() - 1);
      }
    }
    return best;
  }

  void report(double fraction) const {
    if (task_.progress) task_.progress("sequence-search", std::min(1.0, fraction));
  }

 private:
  const EliminationTask& task_;
  Signature goalSig_;
  ForgetBudget budget_;
};

Proof assemble(const EliminationTask& task, const Ontology& justification, const OntologySequence& seq) {
  InferencePool pool = mergeSteps(buildSteps(seq, task.goal), task.goal, justification);
  ExtractionRequest req(pool, task.goal);
  for (const auto& a : justification) req.assertedLeaves.insert(a);
  req.knownSig = task.knownSig;
  if (!task.knownSig.empty()) {
    const Ontology* o = &task.ontology;
    req.knownCheck = [o](const Axiom& a) { return isEntailed(*o, a); };
  }
  req.measure = task.optimizeMeasure;
  req.cancel = task.cancel;
  return extractOptimal(req);
}

}  // namespace

std::vector<std::string> eligibleNames(const Ontology& stage, const Signature& goalSig) {
  Signature sig = stage.signature();
  Occurrences occ = occurrences(stage);
  std::vector<std::string> out;
  for (const auto& c : sig.concepts)
    if (!goalSig.containsConcept(c)) out.push_back(c);
  for (const auto& r : sig.roles)
    if (!goalSig.containsRole(r) && !occ.nonTrivialRoles.count(r)) out.push_back(r);
  return out;
}

std::vector<std::string> orderNames(std::vector<std::string> names, const Signature& sig) {
  auto isRole = [&](const std::string& n) { return sig.containsRole(n) && !sig.containsConcept(n); };
  std::sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
    return std::make_pair(!isRole(a), a) < std::make_pair(!isRole(b), b);
  });
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

OntologySequence eliminationSequence(const EliminationTask& task, const Ontology& start) {
  Search search(task);
  Node root;
  root.seq.stages.push_back(start);
  root.seq.eliminatedAt.emplace_back();
  Node done = task.strategy == Strategy::NameOptimized ? search.nameOptimized(root) : search.heuristic(root);
  done.seq.failed.assign(done.failed.begin(), done.failed.end());
  return done.seq;
}

InferencePool buildSteps(const OntologySequence& seq, const Axiom& goal) {
  InferencePool pool;
  if (seq.stages.empty()) return pool;
  auto link = [&](const Ontology& from, const Axiom& a, const std::vector<std::string>& candidates) {
    if (isTautology(a)) return;
    Justification j = computeJustification(from, a);
    Signature ps = premiseSignature(j.axioms), cs = a.signature();
    std::vector<std::string> eliminated;
    for (const auto& n : candidates)
      if (inSignature(ps, n) && !inSignature(cs, n)) eliminated.push_back(n);
    std::string rule = ruleFor(eliminated);
    pool.addStep(PoolStep{a, j.axioms, rule, eliminated});
  };
  for (std::size_t i = 1; i < seq.stages.size(); ++i) {
    const auto& names = i < seq.eliminatedAt.size() ? seq.eliminatedAt[i] : std::vector<std::string>{};
    for (const auto& a : seq.stages[i])
      if (!seq.stages[i - 1].contains(a)) link(seq.stages[i - 1], a, names);
  }
  const Ontology& last = seq.stages.back();
  if (!last.contains(goal)) {
    Signature ls = last.signature();
    std::vector<std::string> all(ls.concepts.begin(), ls.concepts.end());
    all.insert(all.end(), ls.roles.begin(), ls.roles.end());
    link(last, goal, orderNames(std::move(all), ls));
  }
  return pool;
}

InferencePool mergeSteps(const InferencePool& pool, const Axiom& goal, const Ontology& asserted) {
  std::vector<PoolStep> steps = pool.steps();
  auto producerOf = [&](const Axiom& a) -> int {
    if (asserted.contains(a)) return -1;
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i].conclusion == a) return static_cast<int>(i);
    return -1;
  };
  auto minimal = [](const std::vector<Axiom>& premises, const Axiom& concl) {
    for (std::size_t skip = 0; skip < premises.size(); ++skip) {
      std::vector<Axiom> sub;
      for (std::size_t k = 0; k < premises.size(); ++k)
        if (k != skip) sub.push_back(premises[k]);
      if (isEntailed(std::span<const Axiom>(sub), concl)) return false;
    }
    return true;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < steps.size() && !changed; ++s) {
      for (const auto& alpha : steps[s].premises) {
        int p = producerOf(alpha);
        if (p < 0 || static_cast<std::size_t>(p) == s) continue;
        std::set<Axiom> merged;
        for (const auto& x : steps[s].premises)
          if (!(x == alpha)) merged.insert(x);
        merged.insert(steps[p].premises.begin(), steps[p].premises.end());
        const Axiom& concl = steps[s].conclusion;
        if (merged.size() > steps[s].premises.size() || merged.count(alpha) || merged.count(concl)) continue;
        std::vector<Axiom> prem(merged.begin(), merged.end());
        if (!minimal(prem, concl)) continue;
        Signature ps = premiseSignature(prem), cs = concl.signature();
        std::vector<std::string> names = steps[s].eliminated;
        names.insert(names.end(), steps[p].eliminated.begin(), steps[p].eliminated.end());
        std::vector<std::string> kept;
        for (const auto& n : names)
          if (inSignature(ps, n) && !inSignature(cs, n)) kept.push_back(n);
        kept = orderNames(std::move(kept), ps);
        steps[s] = PoolStep{concl, std::move(prem), ruleFor(kept), kept};
        changed = true;
        break;
      }
    }
  }

  // Keep only steps reachable from the goal.
  std::set<std::string> reach{goal.key()};
  std::vector<bool> used(steps.size(), false);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (used[i] || !reach.count(steps[i].conclusion.key())) continue;
      used[i] = true;
      grew = true;
      for (const auto& a : steps[i].premises) reach.insert(a.key());
    }
  }
  InferencePool out;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (used[i]) out.addStep(steps[i]);
  return out;
}

Proof generateEliminationProof(const EliminationTask& task) {
  auto progress = [&](const char* phase, double f) {
    if (task.progress) task.progress(phase, f);
  };
  progress("justification", 0.0);
  if (task.ontology.contains(task.goal)) return Proof::single(task.goal, true);
  Justification just = [&] {
    try {
      return computeJustification(task.ontology, task.goal);
    } catch (const PreconditionViolation& e) {
      throw NoProof(e.what());
    }
  }();
  Ontology j(just.axioms);
  progress("justification", 1.0);

  if (task.strategy != Strategy::SizeOptimized) {
    progress("sequence-search", 0.0);
    OntologySequence seq;
    seq = eliminationSequence(task, j);
    progress("step-construction", 0.0);
    progress("extraction", 0.0);
    Proof p = assemble(task, j, seq);
    progress("extraction", 1.0);
    return p;
  }

  // Best-first on the measure of the proof assembled from each prefix,
  // starting from the greedy sequence as incumbent.
  Search search(task);
  struct Scored {
    double value;
    std::size_t depth;
    std::size_t id;
    bool operator>(const Scored& o) const {
      return std::tie(value, o.depth, id) > std::tie(o.value, depth, o.id);
    }
  };
  std::vector<Node> nodes;
  std::priority_queue<Scored, std::vector<Scored>, std::greater<>> open;
  std::set<std::string> seen;
  std::optional<Proof> best;
  double bestValue = 0;
  auto consider = [&](Node n) {
    if (!seen.insert(n.key()).second) return;
    Proof p = assemble(task, j, n.seq);
    double v = measureProof(p, task.optimizeMeasure);
    if (search.eligible(n).empty()) {
      if (!best || v < bestValue) {
        best = std::move(p);
        bestValue = v;
      }
      return;
    }
    nodes.push_back(std::move(n));
    open.push(Scored{v, nodes.back().seq.stages.size(), nodes.size() - 1});
  };
  Node root;
  root.seq.stages.push_back(j);
  root.seq.eliminatedAt.emplace_back();
  std::size_t expansions = 0;
  progress("sequence-search", 0.0);
  try {
    Node greedy = search.heuristic(root);
    best = assemble(task, j, greedy.seq);
    bestValue = measureProof(*best, task.optimizeMeasure);
    consider(root);
    while (!open.empty()) {
      Scored top = open.top();
      open.pop();
      if (best && top.value >= bestValue) break;
      if (task.onExpand) task.onExpand();
      if (task.cancel.cancelled()) throw Cancelled();
      if (++expansions > task.maxExpansions) break;
      search.report(static_cast<double>(expansions) / static_cast<double>(task.maxExpansions));
      const Node cur = nodes[top.id];
      for (const auto& name : search.eligible(cur)) consider(search.move(cur, name));
    }
  } catch (const Cancelled&) {
    if (!best) throw;
    auto partial = std::make_shared<Proof>(*best);
    partial->suboptimal = true;
    throw Cancelled(partial);
  }
  progress("extraction", 1.0);
  return *best;
}

}  // namespace proofforge
