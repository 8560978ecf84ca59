#include "proofforge/extract.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace proofforge {

namespace {

constexpr double kEps = 1e-9;

struct Best {
  double value = std::numeric_limits<double>::infinity();
  int step = -1;  // -1: leaf (when `leaf` is set) or unreached
  bool leaf = false;
  bool known = false;
  bool final = false;
};

class Extractor {
 public:
  explicit Extractor(const ExtractionRequest& req) : req_(req), pool_(*req.pool) {
    for (const auto& a : pool_.axioms()) intern(a);
    goal_ = intern(req.goal);
    for (const auto& a : req.assertedLeaves) intern(a);
    stepsByPremise_.resize(axioms_.size());
    remaining_.resize(pool_.steps().size());
    premiseIds_.resize(pool_.steps().size());
    for (std::size_t s = 0; s < pool_.steps().size(); ++s) {
      const auto& st = pool_.steps()[s];
      for (const auto& p : st.premises) {
        int id = ids_.at(p.key());
        premiseIds_[s].push_back(id);
        stepsByPremise_[static_cast<std::size_t>(id)].push_back(static_cast<int>(s));
      }
      conclusionId_.push_back(ids_.at(st.conclusion.key()));
      remaining_[s] = static_cast<int>(premiseIds_[s].size());
    }
  }

  Proof run() {
    best_.assign(axioms_.size(), Best{});
    for (std::size_t i = 0; i < axioms_.size(); ++i) {
      const auto& a = axioms_[i];
      bool asserted = req_.assertedLeaves.count(a) != 0;
      bool known = !asserted && admissibleKnown(a);
      if (asserted || known) {
        best_[i] = Best{req_.measure.leafValue(a), -1, true, known, false};
        push(static_cast<int>(i));
      }
    }
    for (std::size_t s = 0; s < pool_.steps().size(); ++s)
      if (remaining_[s] == 0) relax(static_cast<int>(s));

    while (!queue_.empty()) {
      if (req_.cancel.cancelled()) {
        if (best_[static_cast<std::size_t>(goal_)].step >= 0 || best_[static_cast<std::size_t>(goal_)].leaf) {
          Proof p = unfold();
          p.suboptimal = true;
          throw Cancelled(std::make_shared<const Proof>(std::move(p)));
        }
        throw Cancelled();
      }
      auto [value, id] = queue_.top();
      queue_.pop();
      auto& b = best_[static_cast<std::size_t>(id)];
      if (b.final || value > b.value + kEps) continue;
      b.final = true;
      if (id == goal_) return unfold();
      for (int s : stepsByPremise_[static_cast<std::size_t>(id)]) {
        // A premise may be listed once per step even if shared.
        if (--remaining_[static_cast<std::size_t>(s)] == 0) relax(s);
      }
    }
    throw NoProof("goal " + req_.goal.print(PrintStyle::Unicode) + " is not derivable from admissible leaves");
  }

 private:
  int intern(const Axiom& a) {
    auto [it, fresh] = ids_.emplace(a.key(), static_cast<int>(axioms_.size()));
    if (fresh) {
      axioms_.push_back(a);
      printed_.push_back(a.print(PrintStyle::Unicode));
    }
    return it->second;
  }

  bool admissibleKnown(const Axiom& a) {
    if (req_.knownSig.empty() || !req_.knownCheck) return false;
    if (!req_.knownSig.includes(a.signature())) return false;
    return req_.knownCheck(a);
  }

  void push(int id) { queue_.emplace(best_[static_cast<std::size_t>(id)].value, id); }

  // Compares premise lists of two steps by printed axioms.
  bool premisesBefore(int s, int t) const {
    const auto& a = premiseIds_[static_cast<std::size_t>(s)];
    const auto& b = premiseIds_[static_cast<std::size_t>(t)];
    if (a.size() != b.size()) return a.size() < b.size();
    auto sorted = [&](const std::vector<int>& v) {
      std::vector<std::string> out;
      for (int i : v) out.push_back(printed_[static_cast<std::size_t>(i)]);
      std::sort(out.begin(), out.end());
      return out;
    };
    return sorted(a) < sorted(b);
  }

  void relax(int s) {
    int c = conclusionId_[static_cast<std::size_t>(s)];
    auto& b = best_[static_cast<std::size_t>(c)];
    if (b.final) return;
    std::vector<double> kids;
    for (int p : premiseIds_[static_cast<std::size_t>(s)]) kids.push_back(best_[static_cast<std::size_t>(p)].value);
    double v = req_.measure.combine(axioms_[static_cast<std::size_t>(c)], kids);
    bool better = v < b.value - kEps;
    if (!better && std::abs(v - b.value) <= kEps && !b.leaf && b.step >= 0) better = premisesBefore(s, b.step);
    if (!better) return;
    b.value = v;
    b.step = s;
    push(c);
  }

  int build(Proof& p, int id) {
    const auto& b = best_[static_cast<std::size_t>(id)];
    int v = static_cast<int>(p.vertices.size());
    const auto& a = axioms_[static_cast<std::size_t>(id)];
    p.vertices.push_back(ProofVertex{v, a, b.leaf && !b.known, b.leaf && b.known});
    if (b.leaf) return v;
    const auto& st = pool_.steps()[static_cast<std::size_t>(b.step)];
    ProofStep out{v, {}, st.rule, st.eliminated};
    for (int prem : premiseIds_[static_cast<std::size_t>(b.step)]) out.premises.push_back(build(p, prem));
    p.steps.push_back(std::move(out));
    return v;
  }

  Proof unfold() {
    Proof p;
    p.root = build(p, goal_);
    return p;
  }

  struct QueueOrder {
    const std::vector<std::string>* printed;
    bool operator()(const std::pair<double, int>& x, const std::pair<double, int>& y) const {
      if (std::abs(x.first - y.first) > kEps) return x.first > y.first;
      return (*printed)[static_cast<std::size_t>(x.second)] > (*printed)[static_cast<std::size_t>(y.second)];
    }
  };

  const ExtractionRequest& req_;
  const InferencePool& pool_;
  std::map<std::string, int> ids_;
  std::vector<Axiom> axioms_;
  std::vector<std::string> printed_;
  int goal_ = 0;
  std::vector<std::vector<int>> stepsByPremise_;
  std::vector<std::vector<int>> premiseIds_;
  std::vector<int> conclusionId_;
  std::vector<int> remaining_;
  std::vector<Best> best_;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, QueueOrder> queue_{
      QueueOrder{&printed_}};
};

// Plain recursive tree used by the enumeration oracle.
struct Tree {
  Axiom axiom;
  int step = -1;
  std::vector<Tree> kids;
  int size = 1;
};

constexpr std::size_t kEnumerationCap = 200000;

class Enumerator {
 public:
  Enumerator(const InferencePool& pool, const std::set<Axiom>& asserted) : pool_(pool), asserted_(asserted) {}

  std::vector<Tree> proofs(const Axiom& a, std::set<Axiom>& path, int bound) {
    std::vector<Tree> out;
    if (bound < 1) return out;
    if (asserted_.count(a)) out.push_back(Tree{a, -1, {}, 1});
    path.insert(a);
    for (std::size_t s = 0; s < pool_.steps().size(); ++s) {
      const auto& st = pool_.steps()[s];
      if (!(st.conclusion == a)) continue;
      if (std::any_of(st.premises.begin(), st.premises.end(), [&](const Axiom& p) { return path.count(p) != 0; }))
        continue;
      std::vector<Tree> partial{Tree{a, static_cast<int>(s), {}, 1}};
      for (const auto& prem : st.premises) {
        std::vector<Tree> next;
        for (const auto& base : partial) {
          for (auto& sub : proofs(prem, path, bound - base.size)) {
            Tree t = base;
            t.size += sub.size;
            t.kids.push_back(std::move(sub));
            next.push_back(std::move(t));
            if (next.size() > kEnumerationCap) throw ResourceLimit("too many proofs to enumerate");
          }
        }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      for (auto& t : partial) out.push_back(std::move(t));
      if (out.size() > kEnumerationCap) throw ResourceLimit("too many proofs to enumerate");
    }
    path.erase(a);
    return out;
  }

  int emit(Proof& p, const Tree& t) const {
    int v = static_cast<int>(p.vertices.size());
    p.vertices.push_back(ProofVertex{v, t.axiom, t.step < 0, false});
    if (t.step < 0) return v;
    const auto& st = pool_.steps()[static_cast<std::size_t>(t.step)];
    ProofStep out{v, {}, st.rule, st.eliminated};
    for (const auto& k : t.kids) out.premises.push_back(emit(p, k));
    p.steps.push_back(std::move(out));
    return v;
  }

 private:
  const InferencePool& pool_;
  const std::set<Axiom>& asserted_;
};

}  // namespace

Proof extractOptimal(const ExtractionRequest& req) { return Extractor(req).run(); }

std::vector<Proof> enumerateAllProofs(const InferencePool& pool, const Axiom& goal,
                                      const std::set<Axiom>& assertedLeaves, int bound) {
  Enumerator e(pool, assertedLeaves);
  std::set<Axiom> path;
  std::vector<Proof> out;
  for (const auto& t : e.proofs(goal, path, bound)) {
    Proof p;
    p.root = e.emit(p, t);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace proofforge
