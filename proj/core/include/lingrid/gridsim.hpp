// Copyright 2026 The lingrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "lingrid/corpus.hpp"
#include "lingrid/pair_table.hpp"
#include "lingrid/patterns.hpp"

namespace lingrid {

// Simulated time and node power are exact rationals so that makespans compare
// with ==.
using Rational = boost::rational<std::int64_t>;
using SimTime = Rational;

// Accepts `7`, `2.5` and `3/2`. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

enum class GridErrc : std::uint8_t {
  AccessDenied,
  NoResource,
  RegulationViolation,
  Placement,
  Config,
};

std::string_view to_string(GridErrc code);

class GridError : public std::runtime_error {
 public:
  GridError(GridErrc code, const std::string& message);
  GridErrc code() const { return code_; }

 private:
  GridErrc code_;
};

// ---------------------------------------------------------------------------
// Organizations, credentials, nodes

struct VirtualOrg {
  std::string name;
  std::set<std::string> members;  // empty = any user holding a valid certificate
};

// Plain data; the validity bit stands in for the certificate chain.
struct Certificate {
  std::string user;
  std::string vo;
  bool valid = true;
};

enum class NodeStatus : std::uint8_t { Up, Down };

struct NodeState {
  std::string node_id;
  Rational power{1};  // tokens per simulated second
  std::uint64_t storage_capacity = 0;
  std::set<std::string> hosted_replicas;
  std::set<std::string> supported_vos;
  NodeStatus status = NodeStatus::Up;
  SimTime busy_until{0};

  bool supports(std::string_view vo) const { return supported_vos.count(std::string(vo)) != 0; }
};

struct FailureEvent {
  std::string node_id;
  SimTime down;
  std::optional<SimTime> up;  // nullopt: stays down
};

using FailurePlan = std::vector<FailureEvent>;

// Deterministic in (nodes, seed): `count` outages with start in [0, horizon)
// and length in (0, max_outage].
FailurePlan random_failure_plan(std::span<const NodeState> nodes, std::uint64_t seed,
                                SimTime horizon, std::size_t count, SimTime max_outage);

struct GridPolicy {
  std::vector<VirtualOrg> vos;
  Rational bandwidth{1};  // bytes per simulated second for remote reads
};

/// Parsed grid configuration file:
///
///   vo <name> [members=<u1,u2>]
///   node <id> power=<r> storage=<bytes> vos=<a,b>
///   bandwidth <bytes/s>
///   fail <node> <t_down> <t_up|inf>
///   cert <user> <vo> [invalid]
///
/// `#` starts a comment. Errors are GridError{Config} with a line number.
struct GridConfig {
  GridPolicy policy;
  std::vector<NodeState> nodes;
  FailurePlan failures;
  std::optional<Certificate> certificate;
};

GridConfig parse_grid_config(std::istream& in);
GridConfig parse_grid_config(std::string_view text);
GridConfig load_grid_config(const std::string& path);

// ---------------------------------------------------------------------------
// Replica placement

using Placement = std::map<std::string, std::set<std::string>>;  // shard id -> node ids

/// Each shard lands on exactly `replicas` distinct UP nodes, visited
/// round-robin in (free storage desc, node id asc) order; nodes without room
/// are skipped. Throws GridError{Placement} naming the first shard that does
/// not fit.
Placement place_replicas(std::span<const ShardPtr> shards, std::span<const NodeState> nodes,
                         std::size_t replicas);

void apply_placement(std::vector<NodeState>& nodes, const Placement& placement);

// ---------------------------------------------------------------------------
// Jobs

struct ExtractPairsOp {
  PairMode mode = PairMode::NounAdj;
};

struct MatchPatternOp {
  PatternRule rule;
};

using JobOperation = std::variant<ExtractPairsOp, MatchPatternOp>;

struct JobSpec {
  std::string job_id;
  std::string shard_id;
  JobOperation operation;
  Certificate cert;
};

using JobOutput = std::variant<PairTable, MatchList>;

/// Access to a shard that can be streamed exactly once. A second read is a
/// REGULATION_VIOLATION.
class ReadOnceHandle {
 public:
  explicit ReadOnceHandle(ShardPtr shard);

  void stream(const SentenceVisitor& visit);

  const std::string& shard_id() const;
  bool consumed() const { return consumed_; }
  std::uint64_t tokens_delivered() const { return tokens_delivered_; }

 private:
  ShardPtr shard_;
  bool consumed_ = false;
  std::uint64_t tokens_delivered_ = 0;
};

/// Accepts exactly one output artifact per job.
class ArtifactSink {
 public:
  void emit(JobOutput output);
  bool has_output() const { return output_.has_value(); }
  JobOutput take();

 private:
  std::optional<JobOutput> output_;
};

using Extractor = std::function<void(ReadOnceHandle&, ArtifactSink&)>;

Extractor make_extractor(const JobOperation& operation);

// Runs `extractor` against a fresh handle and enforces both regulations:
// the handle is read once and exactly one artifact comes out.
JobOutput execute_with(const Extractor& extractor, ReadOnceHandle& handle);
JobOutput execute_job(const JobSpec& job, ReadOnceHandle& handle);

// ---------------------------------------------------------------------------
// Resource broker

struct ShardSize {
  std::uint64_t token_count = 0;
  std::uint64_t byte_size = 0;
};

struct BrokerDecision {
  std::string node_id;
  bool local = true;
  SimTime transfer_time{0};
  SimTime run_time{0};
  SimTime finish_estimate{0};
};

/// Picks the execution node for `job` at time `now`. Eligible nodes are UP and
/// support the job's VO. Nodes holding a replica win outright; within a group
/// the order is earliest availability, then highest power, then lowest id. A
/// non-local run pays byte_size / bandwidth to fetch the shard from an UP
/// replica holder.
///
/// Throws GridError{AccessDenied} for an invalid certificate or a VO no node
/// serves, GridError{NoResource} when nothing eligible can reach the data.
BrokerDecision broker_select(const JobSpec& job, const ShardSize& shard,
                             std::span<const NodeState> nodes, const Placement& placement,
                             const GridPolicy& policy, SimTime now = SimTime{0});

// Throws GridError{AccessDenied} unless the certificate is valid for a known VO.
void check_certificate(const Certificate& cert, const GridPolicy& policy);

// ---------------------------------------------------------------------------
// Discrete-event simulation

enum class JobStatus : std::uint8_t { Completed, Failed };

struct JobRecord {
  std::string job_id;
  std::string shard_id;
  std::string node_id;  // node of the completing (or last) attempt
  SimTime start{0};
  SimTime end{0};
  unsigned retries = 0;
  bool local = true;
  JobStatus status = JobStatus::Failed;
  std::string error;  // ACCESS_DENIED / NO_RESOURCE for failed jobs
};

struct SimEvent {
  SimTime time;
  std::uint64_t seq = 0;
  std::string kind;
  std::string details;
};

struct SimReport {
  std::uint64_t seed = 0;
  SimTime makespan{0};
  std::vector<JobRecord> jobs;
  std::vector<SimEvent> events;  // ordered by (time, seq)

  bool all_completed() const;
  unsigned total_retries() const;
};

struct SimulationInput {
  std::vector<JobSpec> jobs;
  std::vector<ShardPtr> shards;
  std::vector<NodeState> nodes;
  Placement placement;
  GridPolicy policy;
  FailurePlan failures;
  std::uint64_t seed = 0;
  bool execute = true;  // false: schedule only, no extraction
};

struct SimulationResult {
  SimReport report;
  std::vector<std::optional<JobOutput>> outputs;  // indexed like input.jobs
};

/// Single-threaded event loop over simulated time. Jobs are submitted at t=0
/// in input order. A job runs for token_count / power (plus transfer time when
/// remote). A node going down aborts its running job and hands its queue back
/// to the broker; jobs with no reachable replica wait for a node to come back
/// and are reported NO_RESOURCE if none does.
SimulationResult run_simulation(const SimulationInput& input);

// `time<TAB>seq<TAB>event<TAB>details`
std::string render_event_log(const SimReport& report);

// `job<TAB>shard<TAB>node<TAB>start<TAB>end<TAB>retries<TAB>local<TAB>status`
std::string render_job_records(const SimReport& report);

// ---------------------------------------------------------------------------
// Local-parallel execution

/// Runs every job on host threads through the same read-once/one-artifact
/// contract. Outputs come back in job order.
std::vector<JobOutput> run_parallel(const std::vector<JobSpec>& jobs,
                                    const std::vector<ShardPtr>& shards, std::size_t workers);

// One job per shard, ids `job-<shard id>`.
std::vector<JobSpec> make_jobs(const std::vector<ShardPtr>& shards, const JobOperation& operation,
                               const Certificate& cert);

// Merges job outputs: PairTables are summed, match lists concatenated in job
// order and reduced with pairs_from_matches.
PairTable merge_outputs(const std::vector<JobOutput>& outputs);

}  // namespace lingrid
