#include "proofforge/tableau.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace proofforge {

namespace {

// Sorted branch levels a label entry (or clash) depends on.
using DepSet = std::vector<int>;

DepSet unite(const DepSet& a, const DepSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  DepSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool containsLevel(const DepSet& d, int level) { return std::binary_search(d.begin(), d.end(), level); }

struct Entry {
  Concept::Kind kind;
  int complement = -1;  // for literals
  int role = -1;
  std::vector<int> kids;
};

class ConceptTable {
 public:
  int intern(const Concept& c) {
    auto it = index_.find(c.key());
    if (it != index_.end()) return it->second;
    Entry e{c.kind(), -1, -1, {}};
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::Not:
      case K::Exists:
      case K::Forall: e.kids.push_back(intern(c.filler())); break;
      case K::And:
      case K::Or:
        for (const auto& op : c.operands()) e.kids.push_back(intern(op));
        break;
      default: break;
    }
    if (c.is(K::Exists) || c.is(K::Forall)) e.role = roleId(c.role());
    int id = static_cast<int>(entries_.size());
    entries_.push_back(std::move(e));
    index_.emplace(c.key(), id);
    if (c.is(K::Name)) {
      auto neg = index_.find("not(" + c.key() + ")");
      if (neg != index_.end()) link(id, neg->second);
    } else if (c.is(K::Not) && c.filler().is(K::Name)) {
      auto pos = index_.find(c.filler().key());
      if (pos != index_.end()) link(id, pos->second);
    }
    return id;
  }

  int roleId(const RoleName& r) {
    auto [it, fresh] = roles_.emplace(r, static_cast<int>(roleNames_.size()));
    if (fresh) roleNames_.push_back(r);
    return it->second;
  }

  const Entry& operator[](int id) const { return entries_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<RoleName>& roleNames() const { return roleNames_; }

 private:
  void link(int a, int b) {
    entries_[static_cast<std::size_t>(a)].complement = b;
    entries_[static_cast<std::size_t>(b)].complement = a;
  }

  std::unordered_map<std::string, int> index_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> roles_;
  std::vector<RoleName> roleNames_;
};

struct Node {
  std::vector<char> has;
  std::vector<DepSet> deps;
  int parent = -1;
  int role = -1;
  DepSet edgeDeps;
  std::vector<int> children;
};

struct State {
  std::vector<Node> nodes;
};

class Solver {
 public:
  Solver(ConceptTable& table, std::vector<int> gcis, std::vector<std::vector<char>> roleSub, std::size_t maxNodes)
      : t_(table), gcis_(std::move(gcis)), sub_(std::move(roleSub)), maxNodes_(maxNodes) {}

  bool satisfiable(int root) {
    State s;
    std::optional<DepSet> clash;
    newNode(s, -1, -1, {}, clash);
    if (!clash) add(s, 0, root, {}, clash);
    if (clash) return false;
    return !expand(std::move(s), 0).has_value();
  }

 private:
  int size() const { return t_.size(); }

  int newNode(State& s, int parent, int role, DepSet edgeDeps, std::optional<DepSet>& clash) {
    if (++created_ > maxNodes_) throw ResourceLimit("tableau node limit exceeded");
    Node n;
    n.has.assign(static_cast<std::size_t>(size()), 0);
    n.deps.resize(static_cast<std::size_t>(size()));
    n.parent = parent;
    n.role = role;
    n.edgeDeps = std::move(edgeDeps);
    int id = static_cast<int>(s.nodes.size());
    s.nodes.push_back(std::move(n));
    if (parent >= 0) s.nodes[static_cast<std::size_t>(parent)].children.push_back(id);
    for (int g : gcis_) {
      add(s, id, g, {}, clash);
      if (clash) break;
    }
    return id;
  }

  // Returns true if the label changed. Sets clash when one arises.
  bool add(State& s, int x, int c, const DepSet& deps, std::optional<DepSet>& clash) {
    Node& n = s.nodes[static_cast<std::size_t>(x)];
    auto ci = static_cast<std::size_t>(c);
    if (n.has[ci]) return false;
    const Entry& e = t_[c];
    if (e.kind == Concept::Kind::Bottom) {
      clash = deps;
      return false;
    }
    if (e.complement >= 0 && n.has[static_cast<std::size_t>(e.complement)]) {
      clash = unite(deps, n.deps[static_cast<std::size_t>(e.complement)]);
      return false;
    }
    n.has[ci] = 1;
    n.deps[ci] = deps;
    return true;
  }

  bool subset(const Node& a, const Node& b) const {
    for (std::size_t i = 0; i < a.has.size(); ++i)
      if (a.has[i] && !b.has[i]) return false;
    return true;
  }

  // open[x]: node is reachable through unblocked ancestors and not blocked.
  std::vector<char> openNodes(const State& s) const {
    std::vector<char> active(s.nodes.size(), 0), open(s.nodes.size(), 0);
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      const Node& n = s.nodes[x];
      if (n.parent < 0) {
        active[x] = 1;
        open[x] = 1;
        continue;
      }
      auto p = static_cast<std::size_t>(n.parent);
      if (!open[p]) continue;
      active[x] = 1;
      bool blocked = false;
      for (std::size_t y = 0; y < x && !blocked; ++y)
        if (open[y] && subset(n, s.nodes[y])) blocked = true;
      open[x] = !blocked;
    }
    return open;
  }

  // Collects the disjuncts of an unsatisfied disjunction that are not
  // already refuted by a complementary literal in the same label.
  struct OrStatus {
    bool satisfied = false;
    std::vector<int> open;
    DepSet refutedBy;
  };

  OrStatus orStatus(const Node& n, const Entry& e) const {
    OrStatus st;
    for (int k : e.kids) {
      if (n.has[static_cast<std::size_t>(k)]) {
        st.satisfied = true;
        return st;
      }
    }
    for (int k : e.kids) {
      const Entry& ke = t_[k];
      if (ke.kind == Concept::Kind::Bottom) continue;
      if (ke.complement >= 0 && n.has[static_cast<std::size_t>(ke.complement)]) {
        st.refutedBy = unite(st.refutedBy, n.deps[static_cast<std::size_t>(ke.complement)]);
        continue;
      }
      st.open.push_back(k);
    }
    return st;
  }

  // Applies ⊓, ∀ and unit ⊔ to fixpoint on open nodes.
  std::optional<DepSet> sweep(State& s, std::vector<char>& open) {
    using K = Concept::Kind;
    std::optional<DepSet> clash;
    bool changed = true;
    while (changed) {
      changed = false;
      open = openNodes(s);
      for (std::size_t x = 0; x < s.nodes.size(); ++x) {
        if (!open[x]) continue;
        for (int c = 0; c < size(); ++c) {
          if (!s.nodes[x].has[static_cast<std::size_t>(c)]) continue;
          const Entry& e = t_[c];
          DepSet d = s.nodes[x].deps[static_cast<std::size_t>(c)];
          if (e.kind == K::And) {
            for (int k : e.kids) {
              changed |= add(s, static_cast<int>(x), k, d, clash);
              if (clash) return clash;
            }
          } else if (e.kind == K::Forall) {
            auto children = s.nodes[x].children;
            for (int ch : children) {
              const Node& cn = s.nodes[static_cast<std::size_t>(ch)];
              if (!sub_[static_cast<std::size_t>(cn.role)][static_cast<std::size_t>(e.role)]) continue;
              changed |= add(s, ch, e.kids[0], unite(d, cn.edgeDeps), clash);
              if (clash) return clash;
            }
          } else if (e.kind == K::Or) {
            OrStatus st = orStatus(s.nodes[x], e);
            if (st.satisfied) continue;
            if (st.open.empty()) return unite(d, st.refutedBy);
            if (st.open.size() == 1) {
              changed |= add(s, static_cast<int>(x), st.open[0], unite(d, st.refutedBy), clash);
              if (clash) return clash;
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  // nullopt: a complete clash-free tableau was found.
  std::optional<DepSet> expand(State s, int depth) {
    using K = Concept::Kind;
    for (;;) {
      std::vector<char> open;
      if (auto clash = sweep(s, open)) return clash;

      // ⊔ branching on the first open node with an undecided disjunction.
      for (std::size_t x = 0; x < s.nodes.size(); ++x) {
        if (!open[x]) continue;
        for (int c = 0; c < size(); ++c) {
          if (!s.nodes[x].has[static_cast<std::size_t>(c)] || t_[c].kind != K::Or) continue;
          OrStatus st = orStatus(s.nodes[x], t_[c]);
          if (st.satisfied || st.open.size() < 2) continue;
          int level = depth + 1;
          DepSet base = unite(s.nodes[x].deps[static_cast<std::size_t>(c)], st.refutedBy);
          DepSet collected = base;
          for (int k : st.open) {
            State branch = s;
            std::optional<DepSet> clash;
            add(branch, static_cast<int>(x), k, unite(base, DepSet{level}), clash);
            if (!clash) clash = expand(std::move(branch), level);
            if (!clash) return std::nullopt;
            if (!containsLevel(*clash, level)) return clash;
            DepSet rest;
            for (int l : *clash)
              if (l != level) rest.push_back(l);
            collected = unite(collected, rest);
          }
          return collected;
        }
      }

      // ∃: one fresh successor for the first unsatisfied restriction.
      bool grew = false;
      for (std::size_t x = 0; x < s.nodes.size() && !grew; ++x) {
        if (!open[x]) continue;
        for (int c = 0; c < size() && !grew; ++c) {
          if (!s.nodes[x].has[static_cast<std::size_t>(c)] || t_[c].kind != K::Exists) continue;
          const Entry& e = t_[c];
          bool witnessed = false;
          for (int ch : s.nodes[x].children) {
            const Node& cn = s.nodes[static_cast<std::size_t>(ch)];
            if (sub_[static_cast<std::size_t>(cn.role)][static_cast<std::size_t>(e.role)] &&
                cn.has[static_cast<std::size_t>(e.kids[0])]) {
              witnessed = true;
              break;
            }
          }
          if (witnessed) continue;
          DepSet d = s.nodes[x].deps[static_cast<std::size_t>(c)];
          std::optional<DepSet> clash;
          int child = newNode(s, static_cast<int>(x), e.role, d, clash);
          if (!clash) add(s, child, e.kids[0], d, clash);
          if (clash) return clash;
          grew = true;
        }
      }
      if (!grew) return std::nullopt;
    }
  }

  ConceptTable& t_;
  std::vector<int> gcis_;
  std::vector<std::vector<char>> sub_;
  std::size_t maxNodes_;
  std::size_t created_ = 0;
};

}  // namespace

bool isSatisfiable(std::span<const Axiom> tbox, const Concept& c, const TableauConfig& cfg) {
  ConceptTable table;
  std::vector<int> gcis;
  for (const auto& a : tbox) {
    for (const auto& [lhs, rhs] : asInclusions(a)) {
      Concept g = nnf(Concept::disjunction({Concept::negation(lhs), rhs}));
      if (g.is(Concept::Kind::Top)) continue;
      int id = table.intern(g);
      if (std::find(gcis.begin(), gcis.end(), id) == gcis.end()) gcis.push_back(id);
    }
  }
  int root = table.intern(nnf(c));
  RoleHierarchy hierarchy(tbox);
  for (const auto& r : hierarchy.roles()) table.roleId(r);
  const auto& names = table.roleNames();
  std::vector<std::vector<char>> sub(names.size(), std::vector<char>(names.size(), 0));
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) sub[i][j] = hierarchy.subsumes(names[i], names[j]) ? 1 : 0;
  Solver solver(table, std::move(gcis), std::move(sub), cfg.maxNodes);
  return solver.satisfiable(root);
}

bool isSatisfiable(const Ontology& o, const Concept& c, const TableauConfig& cfg) {
  return isSatisfiable(std::span<const Axiom>(o.axioms()), c, cfg);
}

bool isEntailed(std::span<const Axiom> tbox, const Axiom& a, const TableauConfig& cfg) {
  if (a.is(Axiom::Kind::RoleInclusion)) return RoleHierarchy(tbox).subsumes(a.sub(), a.sup());
  for (const auto& [lhs, rhs] : asInclusions(a)) {
    if (isSatisfiable(tbox, Concept::conjunction({lhs, Concept::negation(rhs)}), cfg)) return false;
  }
  return true;
}

bool isEntailed(const Ontology& o, const Axiom& a, const TableauConfig& cfg) {
  return isEntailed(std::span<const Axiom>(o.axioms()), a, cfg);
}

bool entailsAll(const Ontology& o, std::span<const Axiom> axioms, const TableauConfig& cfg) {
  for (const auto& a : axioms)
    if (!isEntailed(o, a, cfg)) return false;
  return true;
}

bool isTautology(const Axiom& a) { return isEntailed(std::span<const Axiom>{}, a); }

}  // namespace proofforge
