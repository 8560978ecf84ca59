#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "proofforge/parser.hpp"
#include "proofforge/service.hpp"

using namespace proofforge;
using json = nlohmann::json;

namespace {

class Running {
 public:
  Running() {
    cfg_.port = 0;
    cfg_.storeDir = std::filesystem::temp_directory_path() / "proofforge-service-test";
    std::filesystem::remove_all(cfg_.storeDir);
    service_ = std::make_unique<Service>(cfg_);
    port_ = service_->bind();
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { service_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 100 && !client_->Get("/health"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ~Running() {
    service_->stop();
    thread_.join();
  }

  httplib::Client& http() { return *client_; }
  Service& service() { return *service_; }

  std::string project(const std::string& text) {
    auto r = http().Post("/projects", text, "text/plain");
    REQUIRE(r);
    REQUIRE(r->status == 200);
    return json::parse(r->body)["projectId"];
  }

  std::string start(const std::string& project, const json& body) {
    auto r = http().Post("/projects/" + project + "/proofs", body.dump(), "application/json");
    REQUIRE(r);
    REQUIRE(r->status == 202);
    return json::parse(r->body)["jobId"];
  }

  json job(const std::string& id) {
    auto r = http().Get("/jobs/" + id);
    REQUIRE(r);
    return json::parse(r->body);
  }

  json await(const std::string& id) {
    service().jobs().wait(id, std::chrono::seconds(30));
    return job(id);
  }

 private:
  ServiceConfig cfg_;
  std::unique_ptr<Service> service_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

std::string fig1() { return testing::kFig1Text; }

}  // namespace

TEST_CASE("projects") {
  Running s;
  auto r = s.http().Post("/projects", fig1(), "text/plain");
  REQUIRE(r);
  CHECK(r->status == 200);
  auto body = json::parse(r->body);
  CHECK(body["axiomCount"] == 4);
  CHECK(r->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(s.project(fig1()) == body["projectId"]);
  CHECK(s.http().Post("/projects", "", "text/plain")->status == 400);
  auto bad = s.http().Post("/projects", "sub(A,", "text/plain");
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body).contains("line"));
}

TEST_CASE("entailments") {
  Running s;
  auto id = s.project(fig1());
  auto r = s.http().Get("/projects/" + id + "/entailments");
  REQUIRE(r);
  auto list = json::parse(r->body).get<std::vector<std::string>>();
  for (const char* want : {"A ⊑ B", "C1 ⊑ C3", "C2 ⊑ C3"})
    CHECK(std::find(list.begin(), list.end(), want) != list.end());
  CHECK(s.http().Get("/projects/0123456789abcdef/entailments")->status == 404);
}

TEST_CASE("every method reaches done") {
  Running s;
  auto fig = s.project(fig1());
  auto el = s.project("sub(A, some(r, B)) sub(B, C) sub(some(r, C), D)");
  for (const auto& m : methodNames()) {
    bool elk = m.rfind("elk", 0) == 0;
    auto id = s.start(elk ? el : fig, {{"goal", elk ? "sub(A, D)" : "sub(A, B)"}, {"method", m}});
    auto j = s.await(id);
    INFO(m << " " << j.dump());
    CHECK(j["state"] == "done");
    CHECK(j["result"].is_object());
    CHECK(j["suboptimal"] == false);
  }
  // elk-* outside ELH fails with a hint.
  auto j = s.await(s.start(fig, {{"goal", "sub(A, B)"}, {"method", "elk-size"}}));
  CHECK(j["state"] == "failed");
  CHECK(j["result"].is_null());
}

TEST_CASE("display syntax goals and known signatures") {
  Running s;
  auto fig = s.project(fig1());
  auto j = s.await(s.start(fig, {{"goal", "A ⊑ B"}, {"method", "elim-heur"}, {"knownSignature", {"C1", "C2", "C3"}}}));
  REQUIRE(j["state"] == "done");
  Proof p = readJson(j["result"].dump());
  bool knownLeaf = false;
  for (const auto& v : p.vertices)
    if (v.axiom == parseAxiom("sub(C1, C3)")) knownLeaf = v.known;
  CHECK(knownLeaf);
}

TEST_CASE("request errors") {
  Running s;
  auto fig = s.project(fig1());
  auto post = [&](const std::string& body) { return s.http().Post("/projects/" + fig + "/proofs", body, "application/json")->status; };
  CHECK(post(R"x({"goal": "sub(A,", "method": "elim-heur"})x") == 422);
  CHECK(post(R"x({"goal": "sub(A, B)", "method": "magic"})x") == 422);
  CHECK(post(R"x({"goal": "sub(A, B)", "measure": "weight"})x") == 422);
  CHECK(post("not json") == 422);
  CHECK(s.http().Post("/projects/0123456789abcdef/proofs", R"x({"goal": "sub(A, B)"})x", "application/json")->status == 404);
  CHECK(s.http().Get("/jobs/job-999")->status == 404);
  CHECK(s.http().Delete("/jobs/job-999")->status == 404);
  auto j = s.await(s.start(fig, {{"goal", "sub(A, Z)"}, {"method", "elim-heur"}}));
  CHECK(j["state"] == "failed");
  CHECK(j["error"].is_string());
}

TEST_CASE("cancelling a slowed size-optimized job returns a sub-optimal proof") {
  Running s;
  auto id0 = s.project("sub(A, only(r, C1)) sub(C1, or(C3, C2)) sub(C2, C4) sub(C3, C4) sub(C4, C5) sub(only(r, C5), B)");
  std::atomic<int> expansions{0};
  s.service().jobs().setExpandHook([&] {
    ++expansions;
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  });
  auto id = s.start(id0, {{"goal", "sub(A, B)"}, {"method", "elim-size-opt"}});
  // The greedy incumbent takes a handful of expansions.
  while (expansions < 8) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  auto del = s.http().Delete("/jobs/" + id);
  REQUIRE(del);
  CHECK(del->status == 200);
  auto j = s.await(id);
  CHECK(j["state"] == "cancelled");
  REQUIRE(j["result"].is_object());
  CHECK(j["suboptimal"] == true);
  Ontology o = parseOntology("sub(A, only(r, C1)) sub(C1, or(C3, C2)) sub(C2, C4) sub(C3, C4) sub(C4, C5) sub(only(r, C5), B)");
  CHECK(checkProof(readJson(j["result"].dump()), o, parseAxiom("sub(A, B)")).valid());
}

TEST_CASE("deleting a finished job changes nothing") {
  Running s;
  auto fig = s.project(fig1());
  auto id = s.start(fig, {{"goal", "sub(A, B)"}, {"method", "elim-heur"}});
  auto before = s.await(id);
  REQUIRE(before["state"] == "done");
  auto after = json::parse(s.http().Delete("/jobs/" + id)->body);
  CHECK(after == before);
}

TEST_CASE("job states only move forward under concurrent polling and cancellation") {
  Running s;
  auto fig = s.project(fig1());
  s.service().jobs().setExpandHook([] { std::this_thread::sleep_for(std::chrono::milliseconds(2)); });
  const std::vector<std::string> order{"queued", "running", "done", "cancelled", "failed"};
  auto rank = [&](const std::string& st) {
    auto i = std::find(order.begin(), order.end(), st) - order.begin();
    return i >= 2 ? 2 : i;
  };
  std::vector<std::string> ids;
  for (int i = 0; i < 12; ++i) {
    auto m = methodNames()[2 + static_cast<std::size_t>(i) % 4];
    ids.push_back(s.start(fig, {{"goal", "sub(A, B)"}, {"method", m}}));
  }
  std::atomic<bool> ok{true};
  std::vector<std::thread> pollers;
  for (int t = 0; t < 4; ++t)
    pollers.emplace_back([&, t] {
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto& id = ids[(k + static_cast<std::size_t>(t)) % ids.size()];
        std::string last = "queued", terminalSeen;
        for (int n = 0; n < 20; ++n) {
          auto snap = (t % 2 && n == 5) ? s.service().jobs().cancel(id) : s.service().jobs().get(id);
          std::string st = jobStateName(snap->state);
          if (rank(st) < rank(last)) ok = false;
          if (!terminalSeen.empty() && st != terminalSeen) ok = false;
          if (rank(st) == 2) terminalSeen = st;
          bool hasResult = snap->resultJson.has_value();
          if (st == "done" && !hasResult) ok = false;
          if (snap->suboptimal && st != "cancelled") ok = false;
          last = st;
        }
      }
    });
  for (auto& t : pollers) t.join();
  for (const auto& id : ids) s.service().jobs().wait(id, std::chrono::seconds(30));
  CHECK(ok);
}
