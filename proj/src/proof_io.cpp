#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/parser.hpp"
#include "proofforge/proof.hpp"

namespace proofforge {

using ojson = nlohmann::ordered_json;

namespace {

// Kahn order, premises before conclusions; among ready vertices the
// smallest printed axiom goes first.
std::vector<int> topologicalOrder(const Proof& p) {
  const std::size_t n = p.vertices.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& st : p.steps)
    for (int prem : st.premises) {
      out[static_cast<std::size_t>(prem)].push_back(st.conclusion);
      ++indeg[static_cast<std::size_t>(st.conclusion)];
    }
  std::vector<std::string> shown(n);
  for (std::size_t i = 0; i < n; ++i) shown[i] = p.vertices[i].axiom.print(PrintStyle::Unicode);
  auto cmp = [&](int a, int b) {
    auto& sa = shown[static_cast<std::size_t>(a)];
    auto& sb = shown[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a > b;
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (order.size() != n) throw PreconditionViolation("proof contains a cycle");
  return order;
}

long long asInt(double v) { return static_cast<long long>(v + (v < 0 ? -0.5 : 0.5)); }

}  // namespace

std::string writeJson(const Proof& p) {
  auto order = topologicalOrder(p);
  std::vector<int> renum(p.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) renum[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  ojson j;
  j["goal"] = p.goal().print(PrintStyle::Unicode);
  ojson verts = ojson::array();
  for (int old : order) {
    const auto& v = p.vertices[static_cast<std::size_t>(old)];
    ojson jv;
    jv["id"] = renum[static_cast<std::size_t>(old)];
    jv["axiom"] = v.axiom.print(PrintStyle::Unicode);
    jv["asserted"] = v.asserted;
    jv["known"] = v.known;
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);

  std::vector<const ProofStep*> steps;
  for (const auto& st : p.steps) steps.push_back(&st);
  std::stable_sort(steps.begin(), steps.end(), [&](const ProofStep* a, const ProofStep* b) {
    return renum[static_cast<std::size_t>(a->conclusion)] < renum[static_cast<std::size_t>(b->conclusion)];
  });
  ojson js = ojson::array();
  for (const auto* st : steps) {
    ojson s;
    s["conclusion"] = renum[static_cast<std::size_t>(st->conclusion)];
    ojson prem = ojson::array();
    for (int v : st->premises) prem.push_back(renum[static_cast<std::size_t>(v)]);
    s["premises"] = std::move(prem);
    s["rule"] = st->rule;
    s["eliminated"] = st->eliminated;
    js.push_back(std::move(s));
  }
  j["steps"] = std::move(js);
  j["root"] = renum[static_cast<std::size_t>(p.root)];
  ojson m;
  m["size"] = asInt(measureProof(p, Measure::size()));
  m["depth"] = asInt(measureProof(p, Measure::depth()));
  m["weightedSize"] = asInt(measureProof(p, Measure::weightedSize()));
  j["measures"] = std::move(m);
  j["suboptimal"] = p.suboptimal;
  return j.dump();
}

namespace {

const ojson& field(const ojson& obj, const char* name, const std::string& at) {
  if (!obj.is_object()) throw SchemaError(at, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw SchemaError(at + "/" + name, "missing field");
  return *it;
}

long long intField(const ojson& obj, const char* name, const std::string& at) {
  const auto& v = field(obj, name, at);
  if (!v.is_number_integer()) throw SchemaError(at + "/" + name, "expected an integer");
  return v.get<long long>();
}

bool boolField(const ojson& obj, const char* name, const std::string& at) {
  const auto& v = field(obj, name, at);
  if (!v.is_boolean()) throw SchemaError(at + "/" + name, "expected a boolean");
  return v.get<bool>();
}

std::string stringField(const ojson& obj, const char* name, const std::string& at) {
  const auto& v = field(obj, name, at);
  if (!v.is_string()) throw SchemaError(at + "/" + name, "expected a string");
  return v.get<std::string>();
}

// Finds bare "x ⊑ y" texts whose sides should be roles, given the roles
// already known from restrictions.
std::set<std::string> inferRoles(const std::vector<std::string>& texts, std::set<std::string> roles) {
  std::vector<std::pair<std::string, std::string>> bare;
  for (const auto& t : texts) {
    std::optional<Axiom> parsed;
    try {
      parsed = parseDisplayAxiom(t);
    } catch (const ParseError&) {
      continue;  // reported with its own pointer later
    }
    const Axiom& a = *parsed;
    if (a.is(Axiom::Kind::Gci) && a.lhs().is(Concept::Kind::Name) && a.rhs().is(Concept::Kind::Name))
      bare.emplace_back(a.lhs().id(), a.rhs().id());
    Signature s = a.signature();
    roles.insert(s.roles.begin(), s.roles.end());
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [x, y] : bare)
      if (roles.count(x) + roles.count(y) == 1) {
        roles.insert(x);
        roles.insert(y);
        changed = true;
      }
  }
  return roles;
}

}  // namespace

Proof readJson(const std::string& text, const std::set<std::string>& roleNames) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("", "expected an object");
  std::string goalText = stringField(j, "goal", "");
  const auto& jv = field(j, "vertices", "");
  if (!jv.is_array()) throw SchemaError("/vertices", "expected an array");
  const auto& js = field(j, "steps", "");
  if (!js.is_array()) throw SchemaError("/steps", "expected an array");

  std::vector<std::string> texts{goalText};
  for (std::size_t i = 0; i < jv.size(); ++i) texts.push_back(stringField(jv[i], "axiom", "/vertices/" + std::to_string(i)));
  std::set<std::string> roles = inferRoles(texts, roleNames);

  Proof p;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    std::string at = "/vertices/" + std::to_string(i);
    int id = static_cast<int>(intField(jv[i], "id", at));
    if (id != static_cast<int>(i)) throw SchemaError(at + "/id", "ids must be 0..n-1 in order");
    std::optional<Axiom> ax;
    try {
      ax = parseDisplayAxiom(texts[i + 1], roles);
    } catch (const ParseError& e) {
      throw SchemaError(at + "/axiom", e.what());
    }
    ProofVertex v{id, *ax, boolField(jv[i], "asserted", at), boolField(jv[i], "known", at)};
    p.vertices.push_back(std::move(v));
  }
  const auto n = static_cast<long long>(p.vertices.size());
  auto checkId = [&](long long id, const std::string& at) {
    if (id < 0 || id >= n) throw SchemaError(at, "vertex id out of range");
    return static_cast<int>(id);
  };
  for (std::size_t i = 0; i < js.size(); ++i) {
    std::string at = "/steps/" + std::to_string(i);
    ProofStep st;
    st.conclusion = checkId(intField(js[i], "conclusion", at), at + "/conclusion");
    const auto& prem = field(js[i], "premises", at);
    if (!prem.is_array()) throw SchemaError(at + "/premises", "expected an array");
    for (std::size_t k = 0; k < prem.size(); ++k) {
      std::string pat = at + "/premises/" + std::to_string(k);
      if (!prem[k].is_number_integer()) throw SchemaError(pat, "expected an integer");
      st.premises.push_back(checkId(prem[k].get<long long>(), pat));
    }
    st.rule = stringField(js[i], "rule", at);
    const auto& el = field(js[i], "eliminated", at);
    if (!el.is_array()) throw SchemaError(at + "/eliminated", "expected an array");
    for (std::size_t k = 0; k < el.size(); ++k) {
      if (!el[k].is_string()) throw SchemaError(at + "/eliminated/" + std::to_string(k), "expected a string");
      st.eliminated.push_back(el[k].get<std::string>());
    }
    p.steps.push_back(std::move(st));
  }
  p.root = checkId(intField(j, "root", ""), "/root");
  const auto& m = field(j, "measures", "");
  for (const char* k : {"size", "depth", "weightedSize"}) intField(m, k, "/measures");
  p.suboptimal = boolField(j, "suboptimal", "");
  if (p.vertices.empty()) throw SchemaError("/vertices", "at least one vertex is required");
  try {
    if (!(parseDisplayAxiom(goalText, roles) == p.goal())) throw SchemaError("/goal", "goal differs from the root axiom");
  } catch (const ParseError& e) {
    throw SchemaError("/goal", e.what());
  }
  return p;
}

namespace {

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string writeDot(const Proof& p) {
  std::ostringstream out;
  out << "digraph proof {\n  rankdir=BT;\n  node [fontname=\"Helvetica\"];\n";
  for (const auto& v : p.vertices) {
    std::string style = "rounded";
    if (v.asserted) style += ",bold";
    else if (v.known) style += ",dashed";
    out << "  v" << v.id << " [label=\"" << dotEscape(v.axiom.print(PrintStyle::Unicode)) << "\", shape=box, style=\""
        << style << "\"];\n";
  }
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    out << "  s" << s << " [label=\"" << dotEscape(st.rule) << "\", shape=rectangle, style=filled, fillcolor=gray90];\n";
    for (int prem : st.premises) out << "  v" << prem << " -> s" << s << ";\n";
    out << "  s" << s << " -> v" << st.conclusion << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace proofforge
