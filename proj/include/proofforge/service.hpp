// HTTP service: ontology projects and cancellable proof jobs.

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proofforge/dl.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/methods.hpp"

namespace proofforge {

enum class JobState { Queued, Running, Done, Cancelled, Failed };

std::string jobStateName(JobState s);

struct JobSnapshot {
  std::string id;
  std::string projectId;
  std::string goal;  // display form
  std::string method;
  std::vector<std::string> knownSignature;
  JobState state = JobState::Queued;
  std::string phase;
  double fraction = 0;
  std::optional<std::string> resultJson;
  bool suboptimal = false;
  std::optional<std::string> error;
  std::vector<std::string> warnings;
};

struct JobSpec {
  JobSpec(std::string project, Ontology o, Axiom g, Method m)
      : projectId(std::move(project)), ontology(std::move(o)), goal(std::move(g)), method(m) {}

  std::string projectId;
  Ontology ontology;
  Axiom goal;
  Method method;
  Signature knownSig;
  std::optional<Measure> measure;
};

// Bounded worker pool running proof jobs. States only move forward:
// queued → running → done | cancelled | failed (queued → cancelled too).
class JobRunner {
 public:
  explicit JobRunner(int workers = 2);
  ~JobRunner();
  JobRunner(const JobRunner&) = delete;
  JobRunner& operator=(const JobRunner&) = delete;

  std::string submit(JobSpec spec);
  std::optional<JobSnapshot> get(const std::string& id) const;
  // Requests cancellation; a finished job is left unchanged.
  std::optional<JobSnapshot> cancel(const std::string& id);
  // Blocks until the job has finished or the timeout passed.
  std::optional<JobSnapshot> wait(const std::string& id, std::chrono::milliseconds timeout) const;

  // Called before every search expansion of every job.
  void setExpandHook(std::function<void()> hook);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8321;
  int workers = 2;
  std::filesystem::path storeDir = "proofforge-projects";
  // Built web client, served under `/` when the directory exists.
  std::filesystem::path staticDir;
};

class Service {
 public:
  explicit Service(ServiceConfig cfg);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to cfg.port, or to a free port when it is 0. Returns the port,
  // or -1 on failure.
  int bind();
  // Serves until stop(); call after bind().
  void listen();
  void stop();

  JobRunner& jobs();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Stable 64-bit FNV-1a of the text, as 16 hex digits.
std::string contentHash(const std::string& text);

}  // namespace proofforge
