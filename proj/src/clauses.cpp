#include "proofforge/clauses.hpp"

#include <algorithm>

#include "proofforge/errors.hpp"

namespace proofforge {

std::string Literal::key() const {
  switch (kind) {
    case Kind::Pos: return name;
    case Kind::Neg: return "not(" + name + ")";
    case Kind::Exists: return "some(" + role + "," + name + ")";
    case Kind::Forall: return "only(" + role + "," + name + ")";
  }
  return name;
}

Clause Clause::of(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  Clause c;
  c.lits = std::move(lits);
  return c;
}

std::string Clause::key() const {
  std::string out;
  for (const auto& l : lits) {
    if (!out.empty()) out += " | ";
    out += l.key();
  }
  return out.empty() ? "bot" : out;
}

bool Clause::tautology() const {
  for (const auto& l : lits)
    if (l.kind == Literal::Kind::Pos && std::binary_search(lits.begin(), lits.end(), Literal::neg(l.name)))
      return true;
  return false;
}

std::optional<std::string> Clause::negDefiner(const std::set<std::string>& definers) const {
  for (const auto& l : lits)
    if (l.kind == Literal::Kind::Neg && definers.count(l.name)) return l.name;
  return std::nullopt;
}

bool Clause::mentions(const std::string& conceptName) const {
  return std::any_of(lits.begin(), lits.end(),
                     [&](const Literal& l) { return !l.isRole() && l.name == conceptName; });
}

bool Clause::mentionsRole(const RoleName& r) const {
  return std::any_of(lits.begin(), lits.end(), [&](const Literal& l) { return l.isRole() && l.role == r; });
}

bool Clause::subsumes(const Clause& other) const {
  return std::includes(other.lits.begin(), other.lits.end(), lits.begin(), lits.end());
}

bool isDefinerName(const std::string& name) { return name.size() > 2 && name.rfind("_D", 0) == 0; }

std::string DefinerTable::fresh(Concept represents, std::set<std::string> base) {
  if (byName_.size() >= cap_) throw ResourceLimit("definer cap reached");
  std::string name = "_D" + std::to_string(++counter_);
  if (base.empty()) base.insert(name);
  byBase_.emplace(base, name);
  byName_.emplace(name, DefinerInfo{name, std::move(represents), std::move(base)});
  names_.insert(name);
  return name;
}

std::string DefinerTable::forFiller(const Concept& filler, bool* created) {
  auto it = byFiller_.find(filler.key());
  if (created) *created = it == byFiller_.end();
  if (it != byFiller_.end()) return it->second;
  std::string name = fresh(filler, {});
  byFiller_.emplace(filler.key(), name);
  return name;
}

std::string DefinerTable::combine(const std::string& a, const std::string& b, bool* created) {
  std::set<std::string> base = info(a).base;
  const auto& bb = info(b).base;
  base.insert(bb.begin(), bb.end());
  auto it = byBase_.find(base);
  if (created) *created = it == byBase_.end();
  if (it != byBase_.end()) return it->second;
  std::vector<Concept> parts;
  for (const auto& d : base) parts.push_back(info(d).represents);
  return fresh(Concept::conjunction(std::move(parts)), base);
}

std::vector<std::string> DefinerTable::supersetsOf(const std::string& name) const {
  std::vector<std::string> out;
  const auto& mine = info(name).base;
  for (const auto& [n, inf] : byName_)
    if (inf.base.size() > mine.size() && std::includes(inf.base.begin(), inf.base.end(), mine.begin(), mine.end()))
      out.push_back(n);
  return out;
}

std::vector<std::string> DefinerTable::subsetsOf(const std::string& name) const {
  std::vector<std::string> out;
  const auto& mine = info(name).base;
  for (const auto& [n, inf] : byName_)
    if (inf.base.size() < mine.size() && std::includes(mine.begin(), mine.end(), inf.base.begin(), inf.base.end()))
      out.push_back(n);
  return out;
}

Concept literalConcept(const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::Pos: return Concept::name(l.name);
    case Literal::Kind::Neg: return Concept::negation(Concept::name(l.name));
    case Literal::Kind::Exists: return Concept::exists(l.role, Concept::name(l.name));
    case Literal::Kind::Forall: return Concept::forall(l.role, Concept::name(l.name));
  }
  return Concept::top();
}

Axiom clauseAxiom(const Clause& c) {
  std::vector<Concept> ops;
  for (const auto& l : c.lits) ops.push_back(literalConcept(l));
  return Axiom::gci(Concept::top(), Concept::disjunction(std::move(ops)));
}

int InferenceLog::addInput(const Axiom& a) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back(LogNode{id, a, {}});
  return id;
}

int InferenceLog::addClause(const Clause& c) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back(LogNode{id, std::nullopt, c});
  nodes.back().clause.logId = id;
  return id;
}

void InferenceLog::truncate(std::size_t nodeCount, std::size_t entryCount) {
  if (nodes.size() > nodeCount) nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(nodeCount), nodes.end());
  if (entries.size() > entryCount) entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(entryCount), entries.end());
}

namespace {

using Lits = std::vector<Literal>;

class Normalizer {
 public:
  Normalizer(NormalizedOntology& out, InferenceLog* log) : out_(out), log_(log) {}

  void axiom(const Axiom& a) {
    if (a.is(Axiom::Kind::RoleInclusion)) {
      out_.roleAxioms.push_back(a);
      return;
    }
    Signature s = a.signature();
    for (const auto& n : s.concepts)
      if (isDefinerName(n)) throw PreconditionViolation("input uses reserved definer name " + n);
    int src = log_ ? log_->addInput(a) : -1;
    for (const auto& [l, r] : asInclusions(a)) {
      Concept e = nnf(Concept::disjunction({Concept::negation(l), r}));
      for (auto& lits : clausify(e, src)) emit(std::move(lits), "Normalize", src);
    }
  }

 private:
  std::vector<Lits> clausify(const Concept& e, int src) {
    switch (e.kind()) {
      case Concept::Kind::Top: return {};
      case Concept::Kind::Bottom: return {Lits{}};
      case Concept::Kind::Name: return {Lits{Literal::pos(e.id())}};
      case Concept::Kind::Not: return {Lits{Literal::neg(e.filler().id())}};
      case Concept::Kind::And: {
        std::vector<Lits> out;
        for (const auto& op : e.operands()) {
          auto part = clausify(op, src);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      case Concept::Kind::Or: {
        std::vector<Lits> acc{Lits{}};
        for (const auto& op : e.operands()) {
          auto part = clausify(op, src);
          std::vector<Lits> next;
          for (const auto& a : acc)
            for (const auto& b : part) {
              Lits m = a;
              m.insert(m.end(), b.begin(), b.end());
              next.push_back(std::move(m));
            }
          acc = std::move(next);
          if (acc.empty()) break;
        }
        return acc;
      }
      case Concept::Kind::Exists: return {Lits{Literal::exists(e.role(), definer(e.filler(), src))}};
      case Concept::Kind::Forall: return {Lits{Literal::forall(e.role(), definer(e.filler(), src))}};
    }
    return {};
  }

  std::string definer(const Concept& filler, int src) {
    bool created = false;
    std::string d = out_.definers.forFiller(filler, &created);
    if (created)
      for (auto& lits : clausify(filler, src)) {
        lits.push_back(Literal::neg(d));
        emit(std::move(lits), "DefinerIntro", src);
      }
    return d;
  }

  void emit(Lits lits, const char* rule, int src) {
    Clause c = Clause::of(std::move(lits));
    if (c.tautology() || !seen_.insert(c.key()).second) return;
    if (log_) {
      c.logId = log_->addClause(c);
      log_->entries.push_back(LogEntry{rule, {src}, c.logId, {}});
    }
    out_.clauses.push_back(std::move(c));
  }

  NormalizedOntology& out_;
  InferenceLog* log_;
  std::set<std::string> seen_;
};

}  // namespace

NormalizedOntology normalize(const Ontology& o, InferenceLog* log, std::size_t definerCap) {
  NormalizedOntology out{{}, {}, DefinerTable(definerCap)};
  Normalizer n(out, log);
  for (const auto& a : o) n.axiom(a);
  return out;
}

}  // namespace proofforge
