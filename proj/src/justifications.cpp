#include "proofforge/justifications.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "proofforge/errors.hpp"

namespace proofforge {

namespace {

bool entails(const std::vector<Axiom>& axs, const Axiom& goal, const TableauConfig& cfg) {
  return isEntailed(std::span<const Axiom>(axs), goal, cfg);
}

bool overlaps(const Signature& a, const Signature& b) {
  for (const auto& c : a.concepts)
    if (b.containsConcept(c)) return true;
  for (const auto& r : a.roles)
    if (b.containsRole(r)) return true;
  return false;
}

// Single justification within `pool`, which must entail the goal.
std::vector<Axiom> justify(const std::vector<Axiom>& pool, const Axiom& goal, const TableauConfig& cfg) {
  if (entails({}, goal, cfg)) return {};
  for (const auto& a : pool)
    if (a == goal) return {a};

  std::vector<char> chosen(pool.size(), 0);
  std::vector<Axiom> work;
  Signature sig = goal.signature();
  bool found = false;
  while (!found) {
    bool grew = false;
    std::vector<std::size_t> added;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!chosen[i] && overlaps(pool[i].signature(), sig)) added.push_back(i);
    for (auto i : added) {
      chosen[i] = 1;
      sig.merge(pool[i].signature());
      grew = true;
    }
    work.clear();
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (chosen[i]) work.push_back(pool[i]);
    if (entails(work, goal, cfg)) {
      found = true;
    } else if (!grew) {
      work = pool;
      found = true;
    }
  }

  for (std::size_t k = work.size(); k-- > 0;) {
    std::vector<Axiom> rest;
    for (std::size_t j = 0; j < work.size(); ++j)
      if (j != k) rest.push_back(work[j]);
    if (entails(rest, goal, cfg)) work = std::move(rest);
  }
  return work;
}

}  // namespace

Justification computeJustification(const Ontology& o, const Axiom& goal, const TableauConfig& cfg) {
  if (!isEntailed(o, goal, cfg)) throw PreconditionViolation("goal " + goal.print(PrintStyle::Unicode) + " is not entailed");
  return Justification{justify(o.axioms(), goal, cfg), goal};
}

std::vector<Justification> computeAllJustifications(const Ontology& o, const Axiom& goal, int limit,
                                                    const TableauConfig& cfg) {
  if (limit < 1) throw PreconditionViolation("limit must be at least 1");
  if (!isEntailed(o, goal, cfg)) throw PreconditionViolation("goal " + goal.print(PrintStyle::Unicode) + " is not entailed");

  std::vector<Justification> found;
  std::set<std::set<std::string>> seenJust;
  std::set<std::set<std::string>> seenPaths;
  std::vector<std::set<std::string>> closed;
  auto keysOf = [](const std::vector<Axiom>& axs) {
    std::set<std::string> k;
    for (const auto& a : axs) k.insert(a.key());
    return k;
  };

  // Breadth-first hitting-set tree; a node is the set of removed axioms.
  std::deque<std::set<std::string>> queue{{}};
  while (!queue.empty() && static_cast<int>(found.size()) < limit) {
    auto removed = queue.front();
    queue.pop_front();
    if (!seenPaths.insert(removed).second) continue;
    // A superset of a closed path cannot lead anywhere new.
    bool dead = std::any_of(closed.begin(), closed.end(), [&](const std::set<std::string>& c) {
      return std::includes(removed.begin(), removed.end(), c.begin(), c.end());
    });
    if (dead) continue;
    std::vector<Axiom> pool;
    for (const auto& a : o)
      if (!removed.count(a.key())) pool.push_back(a);
    std::vector<Axiom> j;
    // Reuse a known justification disjoint from the path when possible.
    bool reused = false;
    for (const auto& f : found) {
      bool disjoint = std::none_of(f.axioms.begin(), f.axioms.end(),
                                   [&](const Axiom& a) { return removed.count(a.key()) != 0; });
      if (disjoint) {
        j = f.axioms;
        reused = true;
        break;
      }
    }
    if (!reused) {
      if (!entails(pool, goal, cfg)) {
        closed.push_back(removed);
        continue;
      }
      j = justify(pool, goal, cfg);
      if (seenJust.insert(keysOf(j)).second) found.push_back(Justification{j, goal});
    }
    for (const auto& a : j) {
      auto next = removed;
      next.insert(a.key());
      if (!seenPaths.count(next)) queue.push_back(std::move(next));
    }
  }
  return found;
}

JustificationUnion justificationUnion(const Ontology& o, const Axiom& goal, int cap, const TableauConfig& cfg) {
  JustificationUnion out;
  auto all = computeAllJustifications(o, goal, cap + 1, cfg);
  if (static_cast<int>(all.size()) > cap) {
    all.erase(all.begin() + cap, all.end());
    out.capped = true;
    out.warnings.push_back("justification union capped at " + std::to_string(cap) + " justifications");
  }
  std::set<std::string> keys;
  for (const auto& j : all)
    for (const auto& a : j.axioms) keys.insert(a.key());
  for (const auto& a : o)
    if (keys.count(a.key())) out.ontology.add(a);
  return out;
}

}  // namespace proofforge
