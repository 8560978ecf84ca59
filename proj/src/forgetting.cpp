#include "proofforge/forgetting.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_set>

#include "proofforge/beautify.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/tableau.hpp"

namespace proofforge {

namespace {

std::string joinNames(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::vector<Literal> without(const std::vector<Literal>& lits, const Literal& drop) {
  std::vector<Literal> out;
  for (const auto& l : lits)
    if (!(l == drop)) out.push_back(l);
  return out;
}

std::vector<Literal> merged(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  std::vector<Literal> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

CyclicDefiner::CyclicDefiner(std::vector<std::string> definers)
    : Error("cyclic definers: " + joinNames(definers)), definers_(std::move(definers)) {}

ForgetBudget ForgetBudget::fromEnvironment() {
  ForgetBudget b;
  if (const char* v = std::getenv("PROOFFORGE_TIMEOUT_SECS")) {
    char* end = nullptr;
    double secs = std::strtod(v, &end);
    if (end != v && secs > 0) b.perName = std::chrono::milliseconds(static_cast<long long>(secs * 1000));
  }
  return b;
}

class ClauseForgetter::Impl {
 public:
  Impl(NormalizedOntology start, InferenceLog* log) : log_(log) {
    s.definers = std::move(start.definers);
    s.roleAxioms = std::move(start.roleAxioms);
    for (auto& c : start.clauses) {
      std::size_t i = s.store.size();
      s.index.emplace(c.key(), i);
      s.store.push_back(std::move(c));
      s.alive.push_back(true);
    }
    if (log_)
      for (const auto& ri : s.roleAxioms) riNodes_.emplace(ri.key(), log_->addInput(ri));
  }

  State s;

  void begin(const ForgetBudget& b) {
    budget_ = b;
    deadline_ = std::chrono::steady_clock::now() + b.perName;
    memo_.clear();
  }

  void tick() {
    if (budget_.cancel.cancelled()) throw Cancelled();
    if (std::chrono::steady_clock::now() > deadline_) throw BudgetExceeded("forgetting timed out");
    if (s.store.size() > budget_.maxClauses) throw BudgetExceeded("clause limit reached");
  }

  std::optional<std::string> negDef(const Clause& c) const { return c.negDefiner(s.definers.names()); }
  std::optional<std::string> negDef(const std::vector<Literal>& lits) const {
    for (const auto& l : lits)
      if (l.kind == Literal::Kind::Neg && s.definers.contains(l.name)) return l.name;
    return std::nullopt;
  }

  static bool compatible(const std::optional<std::string>& a, const std::optional<std::string>& b) {
    return !a || !b || *a == *b;
  }

  // Adds a derived clause. Returns true if the clause set changed.
  bool add(std::vector<Literal> lits, const char* rule, std::vector<int> premises, std::string side = {},
           std::string inheritedFrom = {}, int aliasLog = -1) {
    Clause c = Clause::of(std::move(lits));
    if (c.tautology()) return false;
    int negs = 0;
    for (const auto& l : c.lits)
      if (l.kind == Literal::Kind::Neg && s.definers.contains(l.name)) ++negs;
    if (negs > 1) return false;
    std::string key = c.key();
    if (s.index.count(key)) return false;
    if (!log_) {
      for (std::size_t i = 0; i < s.store.size(); ++i)
        if (s.alive[i] && s.store[i].subsumes(c)) return false;
      for (std::size_t i = 0; i < s.store.size(); ++i)
        if (s.alive[i] && c.subsumes(s.store[i])) kill(i);
    }
    c.inheritedFrom = std::move(inheritedFrom);
    if (log_) {
      if (aliasLog >= 0) {
        c.logId = aliasLog;
      } else {
        std::sort(premises.begin(), premises.end());
        premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
        c.logId = log_->addClause(c);
        log_->entries.push_back(LogEntry{rule, std::move(premises), c.logId, std::move(side)});
      }
    }
    std::size_t idx = s.store.size();
    s.index.emplace(key, idx);
    s.store.push_back(c);
    s.alive.push_back(true);
    tick();
    if (auto d = negDef(c)) inheritTo(idx, *d);
    return true;
  }

  void kill(std::size_t i) {
    if (!s.alive[i]) return;
    s.alive[i] = false;
    s.index.erase(s.store[i].key());
  }

  // Copies clause i (constraining d) to every combined definer above d.
  void inheritTo(std::size_t i, const std::string& d) {
    for (const auto& sup : s.definers.supersetsOf(d)) copyInto(i, d, sup);
  }

  void copyInto(std::size_t i, const std::string& from, const std::string& to) {
    Clause src = s.store[i];
    std::vector<Literal> lits = without(src.lits, Literal::neg(from));
    lits.push_back(Literal::neg(to));
    add(std::move(lits), "Inherit", {}, {}, from, src.logId);
  }

  std::string combine(const std::string& a, const std::string& b) {
    bool created = false;
    std::string d;
    try {
      d = s.definers.combine(a, b, &created);
    } catch (const ResourceLimit&) {
      throw BudgetExceeded("definer limit reached");
    }
    if (created) {
      auto subs = s.definers.subsetsOf(d);
      std::set<std::string> subset(subs.begin(), subs.end());
      for (std::size_t i = 0; i < s.store.size(); ++i) {
        if (!s.alive[i]) continue;
        auto nd = negDef(s.store[i]);
        if (nd && subset.count(*nd)) copyInto(i, *nd, d);
      }
    }
    return d;
  }

  // Definers whose clause closure satisfies `direct` somewhere.
  std::set<std::string> mentioning(const std::function<bool(const Clause&)>& direct) const {
    std::set<std::string> out;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < s.store.size(); ++i) {
        if (!s.alive[i]) continue;
        const auto& c = s.store[i];
        auto d = negDef(c);
        if (!d || out.count(*d)) continue;
        bool hit = direct(c);
        for (const auto& l : c.lits)
          if (!hit && l.isRole() && out.count(l.name)) hit = true;
        if (hit) {
          out.insert(*d);
          changed = true;
        }
      }
    }
    return out;
  }

  int riNode(const Axiom& ri) const {
    auto it = riNodes_.find(ri.key());
    return it == riNodes_.end() ? -1 : it->second;
  }

  // Told role inclusions forming a chain from r up to t.
  std::vector<Axiom> rolePath(const RoleName& r, const RoleName& t) const {
    if (r == t) return {};
    std::map<RoleName, std::optional<Axiom>> prev{{r, std::nullopt}};
    std::deque<RoleName> q{r};
    while (!q.empty()) {
      RoleName x = q.front();
      q.pop_front();
      for (const auto& ri : s.roleAxioms) {
        if (ri.sub() != x || prev.count(ri.sup())) continue;
        prev.emplace(ri.sup(), ri);
        if (ri.sup() == t) {
          std::vector<Axiom> path;
          for (RoleName y = t; prev.at(y); y = prev.at(y)->sub()) path.push_back(*prev.at(y));
          return path;
        }
        q.push_back(ri.sup());
      }
    }
    return {};
  }

  std::vector<int> withRoles(std::vector<int> prem, const std::vector<Axiom>& ris) const {
    for (const auto& ri : ris) {
      int n = riNode(ri);
      if (n >= 0) prem.push_back(n);
    }
    return prem;
  }

  bool memo(const char* rule, std::size_t i, std::size_t j, std::size_t k = 0) {
    return memo_.insert(std::string(rule) + ":" + std::to_string(i) + ":" + std::to_string(j) + ":" +
                        std::to_string(k))
        .second;
  }

  // ∃/∀ and ∀/∀ combinations between definers that both satisfy `relevant`.
  std::size_t roleRound(const std::set<std::string>& relevant) {
    RoleHierarchy h(std::span<const Axiom>(s.roleAxioms));
    std::size_t before = s.store.size();
    const std::size_t n = s.store.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.alive[i]) continue;
      for (std::size_t li = 0; li < s.store[i].lits.size(); ++li) {
        const Literal l1 = s.store[i].lits[li];
        if (!l1.isRole() || !relevant.count(l1.name)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!s.alive[i]) break;
          if (!s.alive[j] || i == j) continue;
          if (l1.kind == Literal::Kind::Forall && j < i) continue;
          for (std::size_t lj = 0; lj < s.store[j].lits.size(); ++lj) {
            const Literal l2 = s.store[j].lits[lj];
            if (l2.kind != Literal::Kind::Forall || !relevant.count(l2.name) || l2.name == l1.name) continue;
            if (i == j) continue;
            auto rest1 = without(s.store[i].lits, l1);
            auto rest2 = without(s.store[j].lits, l2);
            if (!compatible(negDef(rest1), negDef(rest2))) continue;
            int p1 = s.store[i].logId, p2 = s.store[j].logId;
            if (l1.kind == Literal::Kind::Exists) {
              if (!h.subsumes(l1.role, l2.role)) continue;
              if (!memo("EF", i * 64 + li, j * 64 + lj)) continue;
              std::string d = combine(l1.name, l2.name);
              if (d == l1.name || d == l2.name) continue;
              auto lits = merged(rest1, rest2);
              lits.push_back(Literal::exists(l1.role, d));
              std::string side = l1.role == l2.role ? "" : l1.role + " ⊑ " + l2.role;
              add(std::move(lits), "ExistsForallCombine", withRoles({p1, p2}, rolePath(l1.role, l2.role)), side);
            } else {
              if (!memo("FF", i * 64 + li, j * 64 + lj)) continue;
              std::vector<RoleName> subs;
              if (l1.role == l2.role) {
                subs.push_back(l1.role);
              } else {
                for (const auto& r : h.roles())
                  if (h.subsumes(r, l1.role) && h.subsumes(r, l2.role)) subs.push_back(r);
              }
              if (subs.empty()) continue;
              std::string d = combine(l1.name, l2.name);
              if (d == l1.name || d == l2.name) continue;
              for (const auto& r : subs) {
                auto lits = merged(rest1, rest2);
                lits.push_back(Literal::forall(r, d));
                auto ris = rolePath(r, l1.role);
                auto more = rolePath(r, l2.role);
                ris.insert(ris.end(), more.begin(), more.end());
                std::string side = ris.empty() ? "" : r + " ⊑ " + l1.role + ", " + r + " ⊑ " + l2.role;
                add(std::move(lits), "ForallForallCombine", withRoles({p1, p2}, ris), side);
              }
            }
          }
        }
      }
    }
    return s.store.size() - before;
  }

  std::size_t resolutionRound(const std::string& x) {
    std::size_t before = s.store.size();
    const std::size_t n = s.store.size();
    const Literal pos = Literal::pos(x), neg = Literal::neg(x);
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.alive[i] || !std::binary_search(s.store[i].lits.begin(), s.store[i].lits.end(), pos)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!s.alive[i]) break;
        if (!s.alive[j] || !std::binary_search(s.store[j].lits.begin(), s.store[j].lits.end(), neg)) continue;
        auto r1 = without(s.store[i].lits, pos);
        auto r2 = without(s.store[j].lits, neg);
        if (!compatible(negDef(r1), negDef(r2))) continue;
        if (!memo("R", i, j)) continue;
        add(merged(r1, r2), "Resolution", {s.store[i].logId, s.store[j].logId});
      }
    }
    return s.store.size() - before;
  }

  // C ⊔ ∃r.D together with the clause ¬D yields C.
  std::size_t unitExistsRound() {
    std::size_t before = s.store.size();
    const std::size_t n = s.store.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.alive[i]) continue;
      const auto lits = s.store[i].lits;
      for (const auto& l : lits) {
        if (l.kind != Literal::Kind::Exists) continue;
        auto it = s.index.find(Clause::of({Literal::neg(l.name)}).key());
        if (it == s.index.end()) continue;
        if (!memo("E", i, it->second)) continue;
        add(without(s.store[i].lits, l), "ExistsElim", {s.store[i].logId, s.store[it->second].logId},
            l.name + " ⊑ ⊥");
        if (!s.alive[i]) break;
      }
    }
    return s.store.size() - before;
  }

  void purgeOrphans() {
    std::set<std::string> reachable;
    std::deque<std::string> q;
    auto visit = [&](const Clause& c) {
      for (const auto& l : c.lits)
        if (l.isRole() && reachable.insert(l.name).second) q.push_back(l.name);
    };
    for (std::size_t i = 0; i < s.store.size(); ++i)
      if (s.alive[i] && !negDef(s.store[i])) visit(s.store[i]);
    while (!q.empty()) {
      std::string d = q.front();
      q.pop_front();
      for (std::size_t i = 0; i < s.store.size(); ++i)
        if (s.alive[i] && negDef(s.store[i]) == d) visit(s.store[i]);
    }
    for (std::size_t i = 0; i < s.store.size(); ++i)
      if (s.alive[i]) {
        auto d = negDef(s.store[i]);
        if (d && !reachable.count(*d)) kill(i);
      }
  }

  void forgetConcept(const std::string& x) {
    auto direct = [&](const Clause& c) { return c.mentions(x); };
    for (;;) {
      std::size_t added = roleRound(mentioning(direct));
      added += resolutionRound(x);
      added += unitExistsRound();
      if (added == 0) break;
    }
    for (std::size_t i = 0; i < s.store.size(); ++i)
      if (s.alive[i] && s.store[i].mentions(x)) kill(i);
    purgeOrphans();
  }

  void forgetRole(const RoleName& r) {
    for (std::size_t i = 0; i < s.store.size(); ++i) {
      if (!s.alive[i]) continue;
      const Clause c = s.store[i];
      for (const auto& l : c.lits) {
        if (l.kind == Literal::Kind::Exists && l.role == r) {
          for (const auto& ri : s.roleAxioms)
            if (ri.sub() == r && ri.sup() != r) {
              auto lits = without(c.lits, l);
              lits.push_back(Literal::exists(ri.sup(), l.name));
              add(std::move(lits), "ExistsRoleHier", withRoles({c.logId}, {ri}), r + " ⊑ " + ri.sup());
            }
        }
        if (l.kind == Literal::Kind::Forall && l.role == r) {
          for (const auto& ri : s.roleAxioms)
            if (ri.sup() == r && ri.sub() != r) {
              auto lits = without(c.lits, l);
              lits.push_back(Literal::forall(ri.sub(), l.name));
              add(std::move(lits), "ForallRoleHier", withRoles({c.logId}, {ri}), ri.sub() + " ⊑ " + r);
            }
        }
      }
    }
    auto direct = [&](const Clause& c) { return c.mentionsRole(r); };
    for (;;) {
      std::size_t added = roleRound(mentioning(direct));
      added += unitExistsRound();
      if (added == 0) added = existsElimination(r);
      if (added == 0) break;
    }
    for (std::size_t i = 0; i < s.store.size(); ++i)
      if (s.alive[i] && s.store[i].mentionsRole(r)) kill(i);

    RoleHierarchy h(std::span<const Axiom>(s.roleAxioms));
    std::vector<Axiom> kept;
    std::set<Axiom> seen;
    for (const auto& ri : s.roleAxioms)
      if (ri.sub() != r && ri.sup() != r && seen.insert(ri).second) kept.push_back(ri);
    for (const auto& q : h.subRoles(r))
      for (const auto& t : h.superRoles(r)) {
        if (q == r || t == r || q == t) continue;
        Axiom ri = Axiom::roleInclusion(q, t);
        if (seen.insert(ri).second) kept.push_back(ri);
      }
    s.roleAxioms = std::move(kept);
    purgeOrphans();
  }

  std::vector<Axiom> tbox() const {
    std::vector<Axiom> out;
    for (std::size_t i = 0; i < s.store.size(); ++i)
      if (s.alive[i]) out.push_back(clauseAxiom(s.store[i]));
    out.insert(out.end(), s.roleAxioms.begin(), s.roleAxioms.end());
    return out;
  }

  // General existential elimination for r: C0 ⊔ ∃r.D0 and Ci ⊔ ∀r.Di give
  // C0 ⊔ C1 ⊔ ... whenever D0 ⊓ D1 ⊓ ... is unsatisfiable.
  std::size_t existsElimination(const RoleName& r) {
    const std::size_t before = s.store.size();
    struct Cand {
      std::size_t clause;
      Literal lit;
      std::vector<Literal> rest;
    };
    std::vector<Cand> exists, foralls;
    for (std::size_t i = 0; i < s.store.size(); ++i) {
      if (!s.alive[i]) continue;
      for (const auto& l : s.store[i].lits) {
        if (!l.isRole() || l.role != r) continue;
        (l.kind == Literal::Kind::Exists ? exists : foralls).push_back({i, l, without(s.store[i].lits, l)});
      }
    }
    if (exists.empty()) return 0;
    std::vector<Axiom> tb = tbox();
    auto unsat = [&](const std::vector<std::string>& ds) {
      tick();
      std::vector<Concept> ops;
      for (const auto& d : ds) ops.push_back(Concept::name(d));
      return !isSatisfiable(std::span<const Axiom>(tb), Concept::conjunction(ops));
    };
    for (const auto& e : exists) {
      std::vector<const Cand*> cands;
      for (const auto& f : foralls)
        if (compatible(negDef(e.rest), negDef(f.rest))) cands.push_back(&f);
      std::string seen = "X:" + std::to_string(e.clause) + ":" + e.lit.key();
      for (const auto* f : cands) seen += ":" + std::to_string(f->clause) + "/" + f->lit.key();
      if (!memo_.insert(seen).second) continue;
      std::vector<std::string> all{e.lit.name};
      for (const auto* f : cands) all.push_back(f->lit.name);
      if (!unsat(all)) continue;
      const std::size_t maxK = std::min<std::size_t>(cands.size(), cands.size() <= 10 ? cands.size() : 3);
      std::vector<std::vector<std::size_t>> found;
      for (std::size_t k = 0; k <= maxK; ++k) {
        std::vector<std::size_t> pick(k);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
          if (pos == k) {
            for (const auto& f : found)
              if (std::includes(pick.begin(), pick.end(), f.begin(), f.end())) return;
            std::optional<std::string> ctx = negDef(e.rest);
            std::vector<std::string> ds{e.lit.name};
            for (auto idx : pick) {
              auto nd = negDef(cands[idx]->rest);
              if (!compatible(ctx, nd)) return;
              if (nd) ctx = nd;
              ds.push_back(cands[idx]->lit.name);
            }
            if (!unsat(ds)) return;
            found.push_back(pick);
            std::vector<Literal> lits = e.rest;
            std::vector<int> prem{s.store[e.clause].logId};
            std::vector<Axiom> sel{clauseAxiom(s.store[e.clause])};
            for (auto idx : pick) {
              lits.insert(lits.end(), cands[idx]->rest.begin(), cands[idx]->rest.end());
              prem.push_back(s.store[cands[idx]->clause].logId);
              sel.push_back(clauseAxiom(s.store[cands[idx]->clause]));
            }
            std::vector<Concept> ops;
            for (const auto& d : ds) ops.push_back(Concept::name(d));
            Axiom witness = Axiom::gci(Concept::conjunction(ops), Concept::bottom());
            if (log_) {
              for (const auto& a : computeJustification(Ontology(tb), witness).axioms) {
                if (a.is(Axiom::Kind::RoleInclusion)) {
                  if (int nd2 = riNode(a); nd2 >= 0) prem.push_back(nd2);
                  continue;
                }
                for (std::size_t i = 0; i < s.store.size(); ++i)
                  if (s.alive[i] && clauseAxiom(s.store[i]) == a) {
                    prem.push_back(s.store[i].logId);
                    break;
                  }
              }
            }
            add(std::move(lits), "ExistsElim", std::move(prem), witness.print(PrintStyle::Unicode));
            return;
          }
          for (std::size_t i = from; i < cands.size(); ++i) {
            pick[pos] = i;
            rec(pos + 1, i + 1);
          }
        };
        rec(0, 0);
      }
    }
    return s.store.size() - before;
  }

  InferenceLog* log_;

 private:
  std::map<std::string, int> riNodes_;
  ForgetBudget budget_;
  std::chrono::steady_clock::time_point deadline_ = std::chrono::steady_clock::time_point::max();
  std::unordered_set<std::string> memo_;
};

ClauseForgetter::ClauseForgetter(NormalizedOntology start, InferenceLog* log)
    : impl_(std::make_unique<Impl>(std::move(start), log)) {}
ClauseForgetter::~ClauseForgetter() = default;

void ClauseForgetter::forgetConceptName(const std::string& name, const ForgetBudget& budget) {
  if (isDefinerName(name)) throw PreconditionViolation("cannot forget a definer");
  impl_->begin(budget);
  impl_->forgetConcept(name);
}

void ClauseForgetter::forgetRoleName(const RoleName& role, const ForgetBudget& budget) {
  impl_->begin(budget);
  impl_->forgetRole(role);
}

std::size_t ClauseForgetter::resolveOn(const std::string& name) {
  impl_->begin({});
  return impl_->resolutionRound(name);
}

std::size_t ClauseForgetter::applyRoleRules(const std::string& name) {
  impl_->begin({});
  return impl_->roleRound(impl_->mentioning([&](const Clause& c) { return c.mentions(name) || c.mentionsRole(name); }));
}

std::vector<Clause> ClauseForgetter::clauses() const {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < impl_->s.store.size(); ++i)
    if (impl_->s.alive[i]) out.push_back(impl_->s.store[i]);
  return out;
}

const std::vector<Axiom>& ClauseForgetter::roleAxioms() const { return impl_->s.roleAxioms; }
const DefinerTable& ClauseForgetter::definers() const { return impl_->s.definers; }

ClauseForgetter::State ClauseForgetter::snapshot() const { return impl_->s; }
void ClauseForgetter::restore(const State& s) { impl_->s = s; }

namespace {

struct DefinerGraph {
  std::map<std::string, std::vector<const Clause*>> defs;
  std::vector<const Clause*> global;

  DefinerGraph(const std::vector<Clause>& clauses, const DefinerTable& definers) {
    for (const auto& c : clauses) {
      auto d = c.negDefiner(definers.names());
      if (d) defs[*d].push_back(&c);
      else global.push_back(&c);
    }
  }

  void checkAcyclic() const {
    std::map<std::string, int> color;
    std::vector<std::string> stack;
    std::function<void(const std::string&)> dfs = [&](const std::string& d) {
      color[d] = 1;
      stack.push_back(d);
      if (auto it = defs.find(d); it != defs.end())
        for (const auto* c : it->second)
          for (const auto& l : c->lits) {
            if (!l.isRole()) continue;
            int col = color[l.name];
            if (col == 1) {
              auto from = std::find(stack.begin(), stack.end(), l.name);
              throw CyclicDefiner(std::vector<std::string>(from, stack.end()));
            }
            if (col == 0) dfs(l.name);
          }
      stack.pop_back();
      color[d] = 2;
    };
    for (const auto* c : global)
      for (const auto& l : c->lits)
        if (l.isRole() && color[l.name] == 0) dfs(l.name);
  }
};

class Denormalizer {
 public:
  Denormalizer(const std::vector<Clause>& clauses, const std::vector<Axiom>& roleAxioms, const DefinerTable& definers)
      : g_(clauses, definers), roles_(std::span<const Axiom>(roleAxioms)), definers_(definers) {}

  Concept def(const std::string& d, const std::set<std::string>& drop) {
    if (drop.empty())
      if (auto it = cache_.find(d); it != cache_.end()) return it->second;
    std::vector<Concept> conj;
    if (auto it = g_.defs.find(d); it != g_.defs.end())
      for (const auto* c : it->second) {
        if (!c->inheritedFrom.empty() && drop.count(c->inheritedFrom)) continue;
        std::vector<Concept> disj;
        for (const auto& l : c->lits)
          if (!(l.kind == Literal::Kind::Neg && l.name == d)) disj.push_back(literal(l, {}));
        conj.push_back(Concept::disjunction(std::move(disj)));
      }
    Concept out = simplify(Concept::conjunction(std::move(conj)));
    if (drop.empty()) cache_.emplace(d, out);
    return out;
  }

  Concept literal(const Literal& l, const std::set<std::string>& drop) {
    switch (l.kind) {
      case Literal::Kind::Exists: return Concept::exists(l.role, def(l.name, drop));
      case Literal::Kind::Forall: return Concept::forall(l.role, def(l.name, drop));
      default: return literalConcept(l);
    }
  }

  // Parts of a combined definer that another global clause already
  // guarantees in the context of `rest`.
  std::set<std::string> implied(const Clause& c, const Literal& l) {
    std::set<std::string> out;
    if (definers_.info(l.name).base.size() < 2) return out;
    auto rest = without(c.lits, l);
    for (const auto* other : g_.global) {
      if (other == &c) continue;
      for (const auto& m : other->lits) {
        if (m.kind != Literal::Kind::Forall || m.name == l.name || !roles_.subsumes(l.role, m.role)) continue;
        auto orest = without(other->lits, m);
        if (std::includes(rest.begin(), rest.end(), orest.begin(), orest.end())) out.insert(m.name);
      }
    }
    return out;
  }

  Ontology run(const std::vector<Axiom>& roleAxioms) {
    g_.checkAcyclic();
    std::vector<Axiom> out;
    for (const auto* c : g_.global) {
      std::vector<Concept> disj;
      for (const auto& l : c->lits) disj.push_back(l.isRole() ? literal(l, implied(*c, l)) : literalConcept(l));
      if (auto b = beautify(Axiom::gci(Concept::top(), Concept::disjunction(std::move(disj))))) out.push_back(*b);
    }
    std::sort(out.begin(), out.end());
    Ontology o;
    for (const auto& a : out) o.add(a);
    for (const auto& ri : roleAxioms) o.add(ri);
    return o;
  }

  const DefinerGraph& graph() const { return g_; }

 private:
  DefinerGraph g_;
  RoleHierarchy roles_;
  const DefinerTable& definers_;
  std::map<std::string, Concept> cache_;
};

}  // namespace

void ClauseForgetter::checkAcyclic() const {
  auto cs = clauses();
  DefinerGraph(cs, impl_->s.definers).checkAcyclic();
}

Ontology ClauseForgetter::denormalize() const {
  return proofforge::denormalize(clauses(), impl_->s.roleAxioms, impl_->s.definers);
}

Ontology denormalize(const std::vector<Clause>& clauses, const std::vector<Axiom>& roleAxioms,
                     const DefinerTable& definers) {
  return Denormalizer(clauses, roleAxioms, definers).run(roleAxioms);
}

namespace {

struct Cache {
  std::mutex mu;
  std::map<std::string, std::optional<Ontology>> entries;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

Cache& cache() {
  static Cache c;
  return c;
}

std::vector<std::string> defaultOrder(const Ontology& o, const Signature& keep) {
  Signature sig = o.signature();
  std::vector<std::string> out;
  for (const auto& c : sig.concepts)
    if (!keep.containsConcept(c)) out.push_back(c);
  for (const auto& r : sig.roles)
    if (!keep.containsRole(r)) out.push_back(r);
  return out;
}

}  // namespace

std::optional<Ontology> forgetName(const Ontology& o, const std::string& name, const ForgetBudget& budget) {
  std::string key = o.canonicalKey() + "\n#" + name;
  {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (auto it = c.entries.find(key); it != c.entries.end()) {
      ++c.hits;
      return it->second;
    }
    ++c.misses;
  }
  Signature sig = o.signature();
  std::optional<Ontology> result;
  try {
    ClauseForgetter f(normalize(o, nullptr, budget.maxDefiners));
    if (sig.containsConcept(name)) f.forgetConceptName(name, budget);
    else if (sig.containsRole(name)) f.forgetRoleName(name, budget);
    result = f.denormalize();
  } catch (const CyclicDefiner&) {
    result = std::nullopt;
  } catch (const ResourceLimit&) {
    return std::nullopt;
  }
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.entries.emplace(key, result);
  return result;
}

ForgettingCacheStats forgettingCacheStats() {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  return {c.entries.size(), c.hits, c.misses};
}

void clearForgettingCache() {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.entries.clear();
  c.hits = c.misses = 0;
}

ForgetResult forgetSignature(const Ontology& o, const Signature& keep, std::vector<std::string> order, bool logging,
                             const ForgetBudget& budget) {
  if (order.empty()) order = defaultOrder(o, keep);
  ForgetResult out;
  if (!logging) {
    Ontology cur = o;
    for (const auto& name : order) {
      if (auto next = forgetName(cur, name, budget)) cur = std::move(*next);
      else out.failedNames.push_back(name);
    }
    out.result = std::move(cur);
    return out;
  }
  Signature sig = o.signature();
  InferenceLog log;
  ClauseForgetter f(normalize(o, &log, budget.maxDefiners), &log);
  for (const auto& name : order) {
    auto state = f.snapshot();
    std::size_t nodes = log.nodes.size(), entries = log.entries.size();
    try {
      if (sig.containsConcept(name)) f.forgetConceptName(name, budget);
      else if (sig.containsRole(name)) f.forgetRoleName(name, budget);
      f.checkAcyclic();
    } catch (const CyclicDefiner&) {
      f.restore(state);
      log.truncate(nodes, entries);
      out.failedNames.push_back(name);
    } catch (const ResourceLimit&) {
      f.restore(state);
      log.truncate(nodes, entries);
      out.failedNames.push_back(name);
    }
  }
  out.result = f.denormalize();
  out.finalClauses = f.clauses();
  out.definers = f.definers();
  out.log = std::move(log);
  return out;
}

}  // namespace proofforge
