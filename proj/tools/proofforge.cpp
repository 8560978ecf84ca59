// proofforge: command-line front end.
//
// Exit codes:
//   0  success
//   1  usage or input error
//   2  goal not entailed, or the checked proof is invalid
//   3  time limit hit, partial proof printed
//   4  resource limit hit without a proof

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "proofforge/el_reasoner.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/forgetting.hpp"
#include "proofforge/justifications.hpp"
#include "proofforge/methods.hpp"
#include "proofforge/parser.hpp"
#include "proofforge/service.hpp"
#include "proofforge/tableau.hpp"

using namespace proofforge;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNoProof = 2, kPartial = 3, kLimit = 4 };

struct UsageError : Error {
  using Error::Error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ontology loadOntology(const std::string& path) {
  std::string text = readFile(path);
  try {
    return parseOntology(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

Axiom loadGoal(const std::string& text, const Ontology& o) {
  try {
    return parseAxiom(text);
  } catch (const ParseError&) {
  }
  try {
    return parseDisplayAxiom(text, o.signature().roles);
  } catch (const Error& e) {
    throw UsageError("malformed goal: " + std::string(e.what()));
  }
}

Signature splitNames(const std::set<std::string>& names, const Ontology& o) {
  Signature sig = o.signature(), out;
  for (const auto& n : names) {
    if (sig.containsRole(n)) out.roles.insert(n);
    else out.concepts.insert(n);
  }
  return out;
}

std::string show(const Axiom& a, bool ascii) { return a.print(ascii ? PrintStyle::Ascii : PrintStyle::Unicode); }

void printTree(const Proof& p, int v, int indent, const std::vector<int>& producer, std::ostream& out) {
  const auto& vx = p.vertices[static_cast<std::size_t>(v)];
  out << std::string(static_cast<std::size_t>(indent), ' ') << vx.axiom.print(PrintStyle::Unicode);
  if (vx.asserted) out << "  [asserted]";
  if (vx.known) out << "  [known]";
  int s = producer[static_cast<std::size_t>(v)];
  if (s < 0) {
    out << "\n";
    return;
  }
  const auto& st = p.steps[static_cast<std::size_t>(s)];
  out << "  <- " << st.rule << "\n";
  for (int prem : st.premises) printTree(p, prem, indent + 2, producer, out);
}

void writeText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// Cancels the token once the deadline passes unless disarmed first.
class Watchdog {
 public:
  Watchdog(CancelToken token, double secs) {
    if (secs <= 0) return;
    thread_ = std::thread([this, token, secs] {
      std::unique_lock lock(mu_);
      if (!cv_.wait_for(lock, std::chrono::duration<double>(secs), [&] { return done_; })) token.cancel();
    });
  }
  ~Watchdog() {
    {
      std::lock_guard lock(mu_);
      done_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  bool done_ = false;
  std::thread thread_;
};

struct ExplainArgs {
  std::string file, goal, method = "elim-heur", known, out, dot, measure;
  double timeout = 0;
};

int runExplain(const ExplainArgs& a) {
  Ontology o = loadOntology(a.file);
  Axiom goal = loadGoal(a.goal, o);
  auto method = parseMethod(a.method);
  if (!method) throw UsageError("unknown method " + a.method);
  ExplainRequest req(o, goal, *method);
  if (!a.known.empty()) req.knownSig = splitNames(parseNameList(readFile(a.known)), o);
  if (!a.measure.empty()) {
    req.measure = Measure::byName(a.measure);
    if (!req.measure) throw UsageError("unknown measure " + a.measure);
  }
  auto emit = [&](const Proof& p) {
    if (!a.out.empty()) writeText(a.out, writeJson(p));
    if (!a.dot.empty()) writeText(a.dot, writeDot(p));
    auto producer = p.producers();
    std::cout << "size " << measureProof(p, Measure::size()) << ", depth " << measureProof(p, Measure::depth())
              << ", steps " << p.steps.size() << (p.suboptimal ? ", may be sub-optimal" : "") << "\n";
    printTree(p, p.root, 0, producer, std::cout);
  };
  try {
    ExplainResult r = [&] {
      Watchdog dog(req.cancel, a.timeout);
      return explain(req);
    }();
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    emit(r.proof);
    return kOk;
  } catch (const UnsupportedInput& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionViolation& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Cancelled& c) {
    if (!c.best()) {
      std::cerr << "cancelled before any proof was found\n";
      return kLimit;
    }
    Proof p = *c.best();
    p.suboptimal = true;
    std::cerr << "warning: time limit reached; the proof may be sub-optimal\n";
    emit(p);
    return kPartial;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proofs for description logic entailments"};
  app.require_subcommand(1);
  bool ascii = false;
  app.add_flag("--ascii", ascii, "Print axioms in the file syntax");

  std::string file, goalText;
  auto* classifyCmd = app.add_subcommand("classify", "List entailed atomic inclusions");
  classifyCmd->add_option("file", file, "Ontology file")->required();

  int all = 0;
  auto* justifyCmd = app.add_subcommand("justify", "Print a justification of the goal");
  justifyCmd->add_option("file", file, "Ontology file")->required();
  justifyCmd->add_option("--goal", goalText, "Goal axiom")->required();
  justifyCmd->add_option("--all", all, "Enumerate up to N justifications")->check(CLI::PositiveNumber);

  ExplainArgs ex;
  auto* explainCmd = app.add_subcommand("explain", "Generate a proof");
  explainCmd->add_option("file", ex.file, "Ontology file")->required();
  explainCmd->add_option("--goal", ex.goal, "Goal axiom")->required();
  explainCmd->add_option("--method", ex.method, "Proof method")->check(CLI::IsMember(methodNames()));
  explainCmd->add_option("--known", ex.known, "File with known names, one per line");
  explainCmd->add_option("--timeout", ex.timeout, "Overall time limit in seconds");
  explainCmd->add_option("--measure", ex.measure, "size, depth or weightedSize");
  explainCmd->add_option("--out", ex.out, "Write the proof as JSON");
  explainCmd->add_option("--dot", ex.dot, "Write the proof as Graphviz DOT");

  std::vector<std::string> keep;
  auto* forgetCmd = app.add_subcommand("forget", "Forget all names except the kept ones");
  forgetCmd->add_option("file", file, "Ontology file")->required();
  forgetCmd->add_option("--keep", keep, "Names to keep")->delimiter(',')->required();

  std::string proofFile, knownFile;
  bool strict = false;
  auto* checkCmd = app.add_subcommand("check", "Check a proof file");
  checkCmd->add_option("proof", proofFile, "Proof JSON")->required();
  checkCmd->add_option("--ontology", file, "Ontology file")->required();
  checkCmd->add_option("--goal", goalText, "Goal axiom")->required();
  checkCmd->add_option("--known", knownFile, "File with known names, one per line");
  checkCmd->add_flag("--strict", strict, "Also check premise minimality of elimination steps");

  ServiceConfig serve;
  std::string staticDir, storeDir = serve.storeDir.string();
  auto* serveCmd = app.add_subcommand("serve", "Run the HTTP service");
  serveCmd->add_option("--port", serve.port, "Port")->check(CLI::Range(0, 65535));
  serveCmd->add_option("--host", serve.host, "Address to bind");
  serveCmd->add_option("--workers", serve.workers, "Concurrent jobs")->check(CLI::PositiveNumber);
  serveCmd->add_option("--store", storeDir, "Project directory");
  serveCmd->add_option("--static", staticDir, "Web client directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*classifyCmd) {
      for (const auto& a : classify(loadOntology(file))) std::cout << show(a, ascii) << "\n";
      return kOk;
    }
    if (*justifyCmd) {
      Ontology o = loadOntology(file);
      Axiom goal = loadGoal(goalText, o);
      if (!isEntailed(o, goal)) {
        std::cerr << "not entailed: " << goal.print(PrintStyle::Unicode) << "\n";
        return kNoProof;
      }
      if (all == 0) {
        for (const auto& a : computeJustification(o, goal).axioms) std::cout << show(a, ascii) << "\n";
        return kOk;
      }
      auto js = computeAllJustifications(o, goal, all);
      for (std::size_t i = 0; i < js.size(); ++i) {
        std::cout << "# justification " << i + 1 << "\n";
        for (const auto& a : js[i].axioms) std::cout << show(a, ascii) << "\n";
      }
      return kOk;
    }
    if (*explainCmd) return runExplain(ex);
    if (*forgetCmd) {
      Ontology o = loadOntology(file);
      std::set<std::string> names;
      for (const auto& k : keep) {
        std::istringstream ss(k);
        for (std::string n; ss >> n;) names.insert(n);
      }
      auto r = forgetSignature(o, splitNames(names, o), {}, false, ForgetBudget::fromEnvironment());
      for (const auto& n : r.failedNames) std::cerr << "could not forget " << n << "\n";
      for (const auto& a : r.result) std::cout << show(a, ascii) << "\n";
      return kOk;
    }
    if (*checkCmd) {
      Ontology o = loadOntology(file);
      Axiom goal = loadGoal(goalText, o);
      Proof p = readJson(readFile(proofFile), o.signature().roles);
      Signature known;
      if (!knownFile.empty()) known = splitNames(parseNameList(readFile(knownFile)), o);
      CheckOptions opts;
      opts.eliminationMinimality = strict;
      auto report = checkProof(p, o, goal, known, opts);
      if (report.valid()) {
        std::cout << "valid\n";
        return kOk;
      }
      std::cout << report.summary() << "\n";
      return kNoProof;
    }
    if (*serveCmd) {
      serve.storeDir = storeDir;
      if (!staticDir.empty()) serve.staticDir = staticDir;
      Service service(serve);
      int port = service.bind();
      if (port < 0) {
        std::cerr << "cannot bind " << serve.host << ":" << serve.port << "\n";
        return kUsage;
      }
      std::cerr << "listening on " << serve.host << ":" << port << "\n";
      service.listen();
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "invalid proof file: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const NoProof& e) {
    std::cerr << e.what() << "\n";
    return kNoProof;
  } catch (const ResourceLimit& e) {
    std::cerr << "limit reached: " << e.what() << "\n";
    return kLimit;
  } catch (const PreconditionViolation& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLimit;
  }
  return kUsage;
}
