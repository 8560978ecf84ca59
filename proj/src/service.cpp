#include "proofforge/service.hpp"

#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "proofforge/el_reasoner.hpp"
#include "proofforge/extract.hpp"
#include "proofforge/parser.hpp"

namespace proofforge {

using json = nlohmann::ordered_json;

std::string jobStateName(JobState s) {
  switch (s) {
    case JobState::Queued: return "queued";
    case JobState::Running: return "running";
    case JobState::Done: return "done";
    case JobState::Cancelled: return "cancelled";
    case JobState::Failed: return "failed";
  }
  return "failed";
}

std::string contentHash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------- jobs

struct JobRunner::Impl {
  struct Job {
    JobSnapshot snap;
    std::shared_ptr<JobSpec> spec;
    CancelToken token;
  };

  mutable std::mutex mu;
  std::condition_variable work;
  mutable std::condition_variable finished;
  std::map<std::string, Job> jobs;
  std::deque<std::string> queue;
  std::vector<std::thread> workers;
  std::function<void()> hook;
  std::size_t counter = 0;
  bool stopping = false;

  static bool terminal(JobState s) { return s == JobState::Done || s == JobState::Cancelled || s == JobState::Failed; }

  // Forward-only transition; returns false if the job already moved past.
  bool advance(Job& j, JobState to) {
    if (terminal(j.snap.state) || static_cast<int>(to) <= static_cast<int>(j.snap.state)) return false;
    j.snap.state = to;
    return true;
  }

  void loop() {
    for (;;) {
      std::string id;
      std::shared_ptr<JobSpec> spec;
      CancelToken token;
      std::function<void()> onExpand;
      {
        std::unique_lock lock(mu);
        work.wait(lock, [&] { return stopping || !queue.empty(); });
        if (stopping) return;
        id = queue.front();
        queue.pop_front();
        Job& j = jobs.at(id);
        if (!advance(j, JobState::Running)) continue;
        spec = j.spec;
        token = j.token;
        onExpand = hook;
      }
      run(id, *spec, token, onExpand);
      finished.notify_all();
    }
  }

  void finish(const std::string& id, const std::function<void(Job&)>& f) {
    std::lock_guard lock(mu);
    Job& j = jobs.at(id);
    if (terminal(j.snap.state)) return;
    f(j);
  }

  void run(const std::string& id, const JobSpec& spec, const CancelToken& token, const std::function<void()>& onExpand) {
    ExplainRequest req(spec.ontology, spec.goal, spec.method);
    req.knownSig = spec.knownSig;
    req.measure = spec.measure;
    req.cancel = token;
    req.onExpand = onExpand;
    req.progress = [this, id](const std::string& phase, double fraction) {
      std::lock_guard lock(mu);
      Job& j = jobs.at(id);
      j.snap.phase = phase;
      j.snap.fraction = fraction;
    };
    auto fail = [&](const std::string& msg) {
      finish(id, [&](Job& j) {
        j.snap.error = msg;
        advance(j, JobState::Failed);
      });
    };
    try {
      ExplainResult r = explain(req);
      auto report = checkProof(r.proof, spec.ontology, spec.goal, spec.knownSig);
      if (!report.valid()) return fail("server-side proof check failed: " + report.summary());
      std::string out = writeJson(r.proof);
      finish(id, [&](Job& j) {
        j.snap.resultJson = std::move(out);
        j.snap.warnings = r.warnings;
        j.snap.fraction = 1.0;
        advance(j, JobState::Done);
      });
    } catch (const Cancelled& c) {
      std::optional<std::string> out;
      if (c.best() && checkProof(*c.best(), spec.ontology, spec.goal, spec.knownSig).valid()) {
        Proof p = *c.best();
        p.suboptimal = true;
        out = writeJson(p);
      }
      finish(id, [&](Job& j) {
        j.snap.resultJson = out;
        j.snap.suboptimal = out.has_value();
        if (out) j.snap.warnings.push_back("the proof may be sub-optimal");
        advance(j, JobState::Cancelled);
      });
    } catch (const NoProof& e) {
      fail(e.what());
    } catch (const ResourceLimit& e) {
      fail(std::string("resource limit: ") + e.what());
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
};

JobRunner::JobRunner(int workers) : impl_(std::make_unique<Impl>()) {
  for (int i = 0; i < std::max(1, workers); ++i) impl_->workers.emplace_back([this] { impl_->loop(); });
}

JobRunner::~JobRunner() {
  {
    std::lock_guard lock(impl_->mu);
    impl_->stopping = true;
    for (auto& [id, j] : impl_->jobs) j.token.cancel();
  }
  impl_->work.notify_all();
  for (auto& t : impl_->workers) t.join();
}

std::string JobRunner::submit(JobSpec spec) {
  std::string id;
  {
    std::lock_guard lock(impl_->mu);
    id = "job-" + std::to_string(++impl_->counter);
    Impl::Job j;
    j.snap.id = id;
    j.snap.projectId = spec.projectId;
    j.snap.goal = spec.goal.print(PrintStyle::Unicode);
    j.snap.method = methodName(spec.method);
    for (const auto& n : spec.knownSig.concepts) j.snap.knownSignature.push_back(n);
    for (const auto& n : spec.knownSig.roles) j.snap.knownSignature.push_back(n);
    j.snap.phase = "queued";
    j.spec = std::make_shared<JobSpec>(std::move(spec));
    impl_->jobs.emplace(id, std::move(j));
    impl_->queue.push_back(id);
  }
  impl_->work.notify_one();
  return id;
}

std::optional<JobSnapshot> JobRunner::get(const std::string& id) const {
  std::lock_guard lock(impl_->mu);
  auto it = impl_->jobs.find(id);
  if (it == impl_->jobs.end()) return std::nullopt;
  return it->second.snap;
}

std::optional<JobSnapshot> JobRunner::cancel(const std::string& id) {
  std::optional<JobSnapshot> out;
  {
    std::lock_guard lock(impl_->mu);
    auto it = impl_->jobs.find(id);
    if (it == impl_->jobs.end()) return std::nullopt;
    auto& j = it->second;
    if (!Impl::terminal(j.snap.state)) {
      j.token.cancel();
      if (j.snap.state == JobState::Queued) impl_->advance(j, JobState::Cancelled);
    }
    out = j.snap;
  }
  impl_->finished.notify_all();
  return out;
}

std::optional<JobSnapshot> JobRunner::wait(const std::string& id, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(impl_->mu);
  auto it = impl_->jobs.find(id);
  if (it == impl_->jobs.end()) return std::nullopt;
  impl_->finished.wait_for(lock, timeout, [&] { return Impl::terminal(it->second.snap.state); });
  return it->second.snap;
}

void JobRunner::setExpandHook(std::function<void()> hook) {
  std::lock_guard lock(impl_->mu);
  impl_->hook = std::move(hook);
}

// ---------------------------------------------------------------- http

namespace {

json jobJson(const JobSnapshot& s) {
  json j;
  j["id"] = s.id;
  j["projectId"] = s.projectId;
  j["goal"] = s.goal;
  j["method"] = s.method;
  j["knownSignature"] = s.knownSignature;
  j["state"] = jobStateName(s.state);
  j["progress"] = {{"phase", s.phase}, {"fraction", s.fraction}};
  j["result"] = s.resultJson ? json::parse(*s.resultJson) : json(nullptr);
  j["suboptimal"] = s.suboptimal;
  j["error"] = s.error ? json(*s.error) : json(nullptr);
  j["warnings"] = s.warnings;
  return j;
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void error(httplib::Response& res, int status, const std::string& msg, json extra = json::object()) {
  extra["error"] = msg;
  reply(res, status, extra);
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceConfig c) : cfg(std::move(c)), runner(cfg.workers) {}

  ServiceConfig cfg;
  httplib::Server server;
  JobRunner runner;
  std::mutex mu;
  std::map<std::string, Ontology> projects;

  std::optional<Ontology> project(const std::string& id) {
    std::lock_guard lock(mu);
    if (auto it = projects.find(id); it != projects.end()) return it->second;
    std::ifstream in(cfg.storeDir / (id + ".dl"));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      Ontology o = parseOntology(ss.str());
      projects.emplace(id, o);
      return o;
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"ok", true}}); });
    server.Get("/methods", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, methodNames()); });

    server.Post("/projects", [this](const httplib::Request& req, httplib::Response& res) { createProject(req, res); });
    server.Get(R"(/projects/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto o = project(req.matches[1]);
      if (!o) return error(res, 404, "unknown project");
      reply(res, 200, projectJson(req.matches[1], *o));
    });
    server.Get(R"(/projects/([0-9a-f]+)/entailments)", [this](const httplib::Request& req, httplib::Response& res) {
      auto o = project(req.matches[1]);
      if (!o) return error(res, 404, "unknown project");
      std::vector<std::string> out;
      for (const auto& a : classify(*o)) out.push_back(a.print(PrintStyle::Unicode));
      std::sort(out.begin(), out.end());
      reply(res, 200, out);
    });
    server.Post(R"(/projects/([0-9a-f]+)/proofs)",
                [this](const httplib::Request& req, httplib::Response& res) { startJob(req, res); });
    server.Get(R"(/jobs/([A-Za-z0-9-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = runner.get(req.matches[1]);
      if (!s) return error(res, 404, "unknown job");
      reply(res, 200, jobJson(*s));
    });
    server.Delete(R"(/jobs/([A-Za-z0-9-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = runner.cancel(req.matches[1]);
      if (!s) return error(res, 404, "unknown job");
      reply(res, 200, jobJson(*s));
    });

    if (!cfg.staticDir.empty() && std::filesystem::is_directory(cfg.staticDir))
      server.set_mount_point("/", cfg.staticDir.string());
  }

  static json projectJson(const std::string& id, const Ontology& o) {
    Signature sig = o.signature();
    return {{"projectId", id},
            {"axiomCount", o.size()},
            {"signature", {{"concepts", sig.concepts}, {"roles", sig.roles}}}};
  }

  void createProject(const httplib::Request& req, httplib::Response& res) {
    const std::string& text = req.body;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return error(res, 400, "empty ontology");
    Ontology o;
    try {
      o = parseOntology(text);
    } catch (const ParseError& e) {
      return error(res, 400, e.what(), {{"line", e.line()}, {"column", e.column()}, {"expected", e.expected()}});
    } catch (const Error& e) {
      return error(res, 400, e.what());
    }
    if (o.empty()) return error(res, 400, "no axioms");
    std::string id = contentHash(text);
    {
      std::lock_guard lock(mu);
      projects.emplace(id, o);
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.storeDir, ec);
    auto path = cfg.storeDir / (id + ".dl");
    if (!std::filesystem::exists(path)) std::ofstream(path) << text;
    reply(res, 200, projectJson(id, o));
  }

  void startJob(const httplib::Request& req, httplib::Response& res) {
    std::string pid = req.matches[1];
    auto o = project(pid);
    if (!o) return error(res, 404, "unknown project");
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return error(res, 422, "body must be a JSON object");
    }
    if (!body.is_object() || !body.contains("goal") || !body["goal"].is_string())
      return error(res, 422, "missing goal");
    Signature sig = o->signature();
    std::optional<Axiom> goal;
    std::string goalText = body["goal"];
    try {
      goal = parseAxiom(goalText);
    } catch (const Error&) {
      try {
        goal = parseDisplayAxiom(goalText, sig.roles);
      } catch (const Error& e) {
        return error(res, 422, std::string("malformed goal: ") + e.what());
      }
    }
    auto method = parseMethod(body.value("method", std::string("elim-heur")));
    if (!method) return error(res, 422, "unknown method", {{"methods", methodNames()}});
    JobSpec spec(pid, *o, *goal, *method);
    if (body.contains("knownSignature")) {
      if (!body["knownSignature"].is_array()) return error(res, 422, "knownSignature must be a list of names");
      for (const auto& n : body["knownSignature"]) {
        if (!n.is_string()) return error(res, 422, "knownSignature must be a list of names");
        std::string name = n;
        if (sig.containsRole(name)) spec.knownSig.roles.insert(name);
        else spec.knownSig.concepts.insert(name);
      }
    }
    if (body.contains("measure") && !body["measure"].is_null()) {
      auto m = body["measure"].is_string() ? Measure::byName(body["measure"].get<std::string>()) : std::nullopt;
      if (!m) return error(res, 422, "unknown measure");
      spec.measure = *m;
    }
    std::string id = runner.submit(std::move(spec));
    reply(res, 202, {{"jobId", id}});
  }
};

Service::Service(ServiceConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) { impl_->routes(); }

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->cfg.port == 0) return impl_->server.bind_to_any_port(impl_->cfg.host);
  return impl_->server.bind_to_port(impl_->cfg.host, impl_->cfg.port) ? impl_->cfg.port : -1;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

JobRunner& Service::jobs() { return impl_->runner; }

}  // namespace proofforge
