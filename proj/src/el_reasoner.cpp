#include "proofforge/el_reasoner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <variant>

#include "proofforge/errors.hpp"

namespace proofforge {

namespace {

bool elConcept(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Name: return true;
    case Concept::Kind::And:
      return std::all_of(c.operands().begin(), c.operands().end(), elConcept);
    case Concept::Kind::Exists: return elConcept(c.filler());
    default: return false;
  }
}

void subconcepts(const Concept& c, std::set<Concept>& out) {
  if (!out.insert(c).second) return;
  switch (c.kind()) {
    case Concept::Kind::Not:
    case Concept::Kind::Exists:
    case Concept::Kind::Forall: subconcepts(c.filler(), out); break;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      for (const auto& op : c.operands()) subconcepts(op, out);
      break;
    default: break;
  }
}

class Saturator {
 public:
  Saturator(const Ontology& o, const std::optional<Axiom>& goal) : o_(o), roles_(o) {
    std::set<Concept> subs;
    // The goal may mention names the ontology does not.
    if (goal && !goal->is(Axiom::Kind::RoleInclusion)) {
      subconcepts(goal->lhs(), subs);
      subconcepts(goal->rhs(), subs);
    }
    for (const auto& ax : o) {
      if (ax.is(Axiom::Kind::RoleInclusion)) {
        if (ax.sub() != ax.sup()) told_[ax.sub()].push_back(ax);
        continue;
      }
      subconcepts(ax.lhs(), subs);
      subconcepts(ax.rhs(), subs);
      gcis_[ax.lhs().key()].push_back({ax, ax.rhs()});
      if (ax.is(Axiom::Kind::Equiv)) gcis_[ax.rhs().key()].push_back({ax, ax.lhs()});
    }
    for (const auto& c : subs) {
      if (c.is(Concept::Kind::Name)) contexts_.insert(c);
      if (c.is(Concept::Kind::Top)) hasTop_ = true;
      if (c.is(Concept::Kind::Exists)) {
        contexts_.insert(c.filler());
        existsRoles_[c.filler().key()].insert(c.role());
      }
      if (c.is(Concept::Kind::And))
        for (const auto& op : c.operands()) conjunctionsWith_[op.key()].push_back(c);
    }
  }

  TracedDerivation run(const std::optional<Axiom>& goal) {
    for (const auto& x : contexts_) {
      derive(x, x, "R0", {});
      if (hasTop_) derive(x, Concept::top(), "RTop", {});
    }
    while (!queue_.empty()) {
      auto [x, c] = queue_.front();
      queue_.pop_front();
      process(x, c);
    }
    TracedDerivation out;
    for (const auto& [xk, set] : facts_)
      for (const auto& c : set) out.conclusions.push_back(Axiom::gci(byKey_.at(xk), c));
    std::sort(out.conclusions.begin(), out.conclusions.end());
    out.pool = std::move(pool_);
    if (goal) {
      out.goalReached = o_.contains(*goal) ||
                        std::binary_search(out.conclusions.begin(), out.conclusions.end(), *goal);
    }
    return out;
  }

 private:
  using Premise = std::variant<std::pair<Concept, Concept>, Axiom>;

  bool known(const Concept& x, const Concept& c) const {
    auto it = facts_.find(x.key());
    return it != facts_.end() && it->second.count(c) != 0;
  }

  bool existsOccurs(const RoleName& r, const Concept& filler) const {
    auto it = existsRoles_.find(filler.key());
    if (it == existsRoles_.end()) return false;
    for (const auto& s : it->second)
      if (roles_.subsumes(r, s)) return true;
    return false;
  }

  void derive(const Concept& x, const Concept& c, const char* rule, const std::vector<Premise>& premises) {
    Axiom concl = Axiom::gci(x, c);
    if (!o_.contains(concl)) {
      PoolStep st{concl, {}, rule, {}};
      for (const auto& p : premises) {
        if (const auto* ax = std::get_if<Axiom>(&p)) {
          st.premises.push_back(*ax);
          continue;
        }
        const auto& [px, pc] = std::get<std::pair<Concept, Concept>>(p);
        if (px == pc || pc.is(Concept::Kind::Top)) continue;
        st.premises.push_back(Axiom::gci(px, pc));
      }
      pool_.addStep(std::move(st));
    }
    byKey_.emplace(x.key(), x);
    if (pending_[x.key()].insert(c).second) queue_.emplace_back(x, c);
  }

  void process(const Concept& x, const Concept& c) {
    facts_[x.key()].insert(c);
    std::pair<Concept, Concept> self{x, c};

    if (c.is(Concept::Kind::And))
      for (const auto& op : c.operands()) derive(x, op, "RAndMinus", {self});

    if (auto it = conjunctionsWith_.find(c.key()); it != conjunctionsWith_.end()) {
      for (const auto& k : it->second) {
        std::vector<Premise> prem;
        bool all = true;
        for (const auto& op : k.operands()) {
          if (!known(x, op)) {
            all = false;
            break;
          }
          prem.emplace_back(std::pair<Concept, Concept>{x, op});
        }
        if (all) derive(x, k, "RAndPlus", prem);
      }
    }

    if (auto it = gcis_.find(c.key()); it != gcis_.end())
      for (const auto& [ax, rhs] : it->second) derive(x, rhs, "RGci", {self, ax});

    if (c.is(Concept::Kind::Exists)) {
      const auto& r = c.role();
      const auto& y = c.filler();
      links_[y.key()].emplace_back(x, r);
      if (auto fit = facts_.find(y.key()); fit != facts_.end()) {
        std::vector<Concept> subsumers(fit->second.begin(), fit->second.end());
        for (const auto& z : subsumers)
          if (!(z == y) && existsOccurs(r, z))
            derive(x, Concept::exists(r, z), "RExists", {self, std::pair<Concept, Concept>{y, z}});
      }
      if (auto tit = told_.find(r); tit != told_.end())
        for (const auto& ri : tit->second)
          if (existsOccurs(ri.sup(), y)) derive(x, Concept::exists(ri.sup(), y), "RRole", {self, ri});
    }

    if (auto lit = links_.find(x.key()); lit != links_.end() && !(c == x)) {
      auto links = lit->second;
      for (const auto& [w, r] : links)
        if (existsOccurs(r, c))
          derive(w, Concept::exists(r, c), "RExists",
                 {std::pair<Concept, Concept>{w, Concept::exists(r, x)}, self});
    }
  }

  const Ontology& o_;
  RoleHierarchy roles_;
  std::set<Concept> contexts_;
  bool hasTop_ = false;
  std::map<std::string, std::vector<std::pair<Axiom, Concept>>> gcis_;
  std::map<RoleName, std::vector<Axiom>> told_;
  std::map<std::string, std::set<RoleName>> existsRoles_;
  std::map<std::string, std::vector<Concept>> conjunctionsWith_;
  std::map<std::string, Concept> byKey_;
  std::map<std::string, std::set<Concept>> facts_;
  std::map<std::string, std::set<Concept>> pending_;
  std::map<std::string, std::vector<std::pair<Concept, RoleName>>> links_;
  std::deque<std::pair<Concept, Concept>> queue_;
  InferencePool pool_;
};

}  // namespace

bool isELH(const Axiom& a) {
  if (a.is(Axiom::Kind::RoleInclusion)) return true;
  return elConcept(a.lhs()) && elConcept(a.rhs());
}

bool isELH(const Ontology& o) {
  return std::all_of(o.begin(), o.end(), [](const Axiom& a) { return isELH(a); });
}

TracedDerivation saturate(const Ontology& o, const std::optional<Axiom>& goal) {
  if (!isELH(o)) throw PreconditionViolation("ontology is not in ELH");
  return Saturator(o, goal).run(goal);
}

std::vector<Axiom> classify(const Ontology& o, const TableauConfig& cfg) {
  std::vector<Axiom> out;
  const auto names = o.signature().concepts;
  if (isELH(o)) {
    auto d = saturate(o);
    for (const auto& ax : d.conclusions) {
      const auto& l = ax.lhs();
      const auto& r = ax.rhs();
      if (l.is(Concept::Kind::Name) && r.is(Concept::Kind::Name) && !(l == r) && names.count(l.id()) &&
          names.count(r.id()))
        out.push_back(ax);
    }
  } else {
    for (const auto& a : names) {
      Concept ca = Concept::name(a);
      if (!isSatisfiable(o, ca, cfg)) {
        out.push_back(Axiom::gci(ca, Concept::bottom()));
        continue;
      }
      for (const auto& b : names) {
        if (a == b) continue;
        Axiom q = Axiom::gci(ca, Concept::name(b));
        if (isEntailed(o, q, cfg)) out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Axiom& x, const Axiom& y) {
    return x.print(PrintStyle::Unicode) < y.print(PrintStyle::Unicode);
  });
  return out;
}

}  // namespace proofforge
