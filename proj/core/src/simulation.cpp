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

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

#include <fmt/format.h>

#include "lingrid/gridsim.hpp"

namespace lingrid {

bool SimReport::all_completed() const {
  return std::all_of(jobs.begin(), jobs.end(),
                     [](const JobRecord& j) { return j.status == JobStatus::Completed; });
}

unsigned SimReport::total_retries() const {
  unsigned n = 0;
  for (const auto& j : jobs) n += j.retries;
  return n;
}

namespace {

enum class EventKind : std::uint8_t { Submit, NodeDown, NodeUp, Finish };

struct QueuedEvent {
  SimTime time;
  std::uint64_t seq;
  EventKind kind;
  std::size_t index;  // job or node
  std::uint64_t attempt;
};

struct LaterFirst {
  bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
    return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
  }
};

struct JobState {
  JobRecord record;
  ShardSize size;
  ShardPtr shard;
  std::optional<std::size_t> node;
  std::uint64_t attempt = 0;
  bool pending = false;
  bool finished = false;
  SimTime transfer{0};
  SimTime run_time{0};
};

class Simulator {
 public:
  explicit Simulator(const SimulationInput& input) : in_(input), nodes_(input.nodes) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!node_index_.emplace(nodes_[i].node_id, i).second) {
        throw std::invalid_argument(fmt::format("duplicate node id '{}'", nodes_[i].node_id));
      }
    }
    queues_.resize(nodes_.size());
    running_.resize(nodes_.size());

    std::map<std::string, ShardPtr, std::less<>> shards;
    for (const auto& s : input.shards) shards[s->id()] = s;
    jobs_.resize(input.jobs.size());
    for (std::size_t j = 0; j < input.jobs.size(); ++j) {
      const auto& spec = input.jobs[j];
      auto it = shards.find(spec.shard_id);
      if (it == shards.end()) {
        throw std::invalid_argument(fmt::format("job '{}' names unknown shard '{}'", spec.job_id,
                                                spec.shard_id));
      }
      jobs_[j].shard = it->second;
      jobs_[j].size = {it->second->token_count(), it->second->byte_size()};
      jobs_[j].record.job_id = spec.job_id;
      jobs_[j].record.shard_id = spec.shard_id;
    }
    outputs_.resize(input.jobs.size());
  }

  SimulationResult run() {
    for (std::size_t j = 0; j < jobs_.size(); ++j) push(SimTime{0}, EventKind::Submit, j);
    for (const auto& f : in_.failures) {
      const auto n = node(f.node_id);
      push(f.down, EventKind::NodeDown, n);
      if (f.up) push(*f.up, EventKind::NodeUp, n);
    }

    SimTime now{0};
    while (!queue_.empty()) {
      const auto ev = queue_.top();
      queue_.pop();
      now = ev.time;
      switch (ev.kind) {
        case EventKind::Submit: submit(ev.index, now); break;
        case EventKind::NodeDown: node_down(ev.index, now); break;
        case EventKind::NodeUp: node_up(ev.index, now); break;
        case EventKind::Finish: finish(ev.index, ev.attempt, now); break;
      }
    }

    for (auto& job : jobs_) {
      if (job.pending) {
        job.pending = false;
        job.record.status = JobStatus::Failed;
        job.record.error = std::string(to_string(GridErrc::NoResource));
        log(now, "FAILED", fmt::format("job={} reason=NO_RESOURCE", job.record.job_id));
      }
    }

    SimulationResult result;
    result.report.seed = in_.seed;
    std::optional<SimTime> last_end;
    for (auto& job : jobs_) {
      if (job.record.status == JobStatus::Completed) {
        last_end = last_end ? std::max(*last_end, job.record.end) : job.record.end;
      }
      result.report.jobs.push_back(std::move(job.record));
    }
    if (last_end && first_start_) result.report.makespan = *last_end - *first_start_;
    result.report.events = std::move(events_);
    result.outputs = std::move(outputs_);
    return result;
  }

 private:
  std::size_t node(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) {
      throw std::invalid_argument(fmt::format("unknown node '{}'", id));
    }
    return it->second;
  }

  void push(SimTime time, EventKind kind, std::size_t index, std::uint64_t attempt = 0) {
    queue_.push(QueuedEvent{time, next_seq_++, kind, index, attempt});
  }

  void log(SimTime time, std::string_view kind, std::string details) {
    events_.push_back(SimEvent{time, events_.size(), std::string(kind), std::move(details)});
  }

  void submit(std::size_t j, SimTime now) {
    log(now, "SUBMIT", fmt::format("job={} shard={}", jobs_[j].record.job_id,
                                   jobs_[j].record.shard_id));
    assign(j, now);
  }

  void assign(std::size_t j, SimTime now) {
    auto& job = jobs_[j];
    BrokerDecision decision;
    try {
      decision = broker_select(in_.jobs[j], job.size, nodes_, in_.placement, in_.policy, now);
    } catch (const GridError& e) {
      if (e.code() == GridErrc::NoResource) {
        job.pending = true;
        log(now, "WAIT", fmt::format("job={} reason=NO_RESOURCE", job.record.job_id));
        return;
      }
      job.record.status = JobStatus::Failed;
      job.record.error = std::string(to_string(e.code()));
      job.finished = true;
      log(now, "REJECT", fmt::format("job={} reason={}", job.record.job_id, job.record.error));
      return;
    }

    const auto n = node(decision.node_id);
    job.node = n;
    job.record.local = decision.local;
    job.transfer = decision.transfer_time;
    job.run_time = decision.run_time;
    queues_[n].push_back(j);
    auto& state = nodes_[n];
    state.busy_until = std::max(state.busy_until, now) + job.transfer + job.run_time;
    log(now, "ASSIGN",
        fmt::format("job={} node={} local={} transfer={} estimate={}", job.record.job_id,
                    decision.node_id, decision.local ? 1 : 0, format_rational(job.transfer),
                    format_rational(decision.finish_estimate)));
    if (!running_[n]) start_next(n, now);
  }

  void start_next(std::size_t n, SimTime now) {
    if (queues_[n].empty()) return;
    const auto j = queues_[n].front();
    queues_[n].pop_front();
    running_[n] = j;
    auto& job = jobs_[j];
    ++job.attempt;
    job.record.start = now;
    if (!first_start_ || now < *first_start_) first_start_ = now;
    push(now + job.transfer + job.run_time, EventKind::Finish, j, job.attempt);
    log(now, "START", fmt::format("job={} node={} attempt={}", job.record.job_id,
                                  nodes_[n].node_id, job.attempt));
  }

  void finish(std::size_t j, std::uint64_t attempt, SimTime now) {
    auto& job = jobs_[j];
    if (job.attempt != attempt || !job.node || running_[*job.node] != j) return;  // aborted run
    const auto n = *job.node;
    running_[n].reset();
    job.finished = true;
    job.record.status = JobStatus::Completed;
    job.record.end = now;
    job.record.node_id = nodes_[n].node_id;
    if (in_.execute) {
      ReadOnceHandle handle(job.shard);
      outputs_[j] = execute_job(in_.jobs[j], handle);
    }
    log(now, "FINISH", fmt::format("job={} node={}", job.record.job_id, nodes_[n].node_id));
    start_next(n, now);
  }

  void node_down(std::size_t n, SimTime now) {
    auto& state = nodes_[n];
    if (state.status == NodeStatus::Down) return;
    state.status = NodeStatus::Down;
    state.busy_until = now;
    log(now, "NODE_DOWN", fmt::format("node={}", state.node_id));

    std::vector<std::size_t> displaced;
    if (running_[n]) {
      const auto j = *running_[n];
      running_[n].reset();
      ++jobs_[j].attempt;  // invalidates the scheduled FINISH
      log(now, "ABORT", fmt::format("job={} node={}", jobs_[j].record.job_id, state.node_id));
      displaced.push_back(j);
    }
    displaced.insert(displaced.end(), queues_[n].begin(), queues_[n].end());
    queues_[n].clear();
    for (const auto j : displaced) {
      auto& job = jobs_[j];
      job.node.reset();
      ++job.record.retries;
      log(now, "RESCHEDULE", fmt::format("job={} retry={}", job.record.job_id, job.record.retries));
      assign(j, now);
    }
  }

  void node_up(std::size_t n, SimTime now) {
    auto& state = nodes_[n];
    if (state.status == NodeStatus::Up) return;
    state.status = NodeStatus::Up;
    state.busy_until = now;
    log(now, "NODE_UP", fmt::format("node={}", state.node_id));
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
      if (!jobs_[j].pending) continue;
      jobs_[j].pending = false;
      assign(j, now);
    }
  }

  const SimulationInput& in_;
  std::vector<NodeState> nodes_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  std::vector<std::deque<std::size_t>> queues_;
  std::vector<std::optional<std::size_t>> running_;
  std::vector<JobState> jobs_;
  std::vector<std::optional<JobOutput>> outputs_;
  std::vector<SimEvent> events_;
  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterFirst> queue_;
  std::uint64_t next_seq_ = 0;
  std::optional<SimTime> first_start_;
};

}  // namespace

SimulationResult run_simulation(const SimulationInput& input) {
  return Simulator(input).run();
}

std::string render_event_log(const SimReport& report) {
  std::string out;
  for (const auto& ev : report.events) {
    out += fmt::format("{}\t{}\t{}\t{}\n", format_rational(ev.time), ev.seq, ev.kind, ev.details);
  }
  return out;
}

std::string render_job_records(const SimReport& report) {
  std::string out;
  for (const auto& j : report.jobs) {
    const bool ok = j.status == JobStatus::Completed;
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", j.job_id, j.shard_id,
                       j.node_id.empty() ? "-" : j.node_id, ok ? format_rational(j.start) : "-",
                       ok ? format_rational(j.end) : "-", j.retries, j.local ? 1 : 0,
                       ok ? "COMPLETED" : j.error);
  }
  return out;
}

}  // namespace lingrid
