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

#include "lingrid/gridsim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include <fmt/format.h>

namespace lingrid {

// ---------------------------------------------------------------------------
// Placement

Placement place_replicas(std::span<const ShardPtr> shards, std::span<const NodeState> nodes,
                         std::size_t replicas) {
  if (replicas == 0) throw GridError(GridErrc::Placement, "replication factor must be at least 1");

  std::map<std::string, std::uint64_t, std::less<>> shard_bytes;
  for (const auto& s : shards) shard_bytes[s->id()] = s->byte_size();

  struct Slot {
    const NodeState* node;
    std::uint64_t free;
  };
  std::vector<Slot> order;
  for (const auto& node : nodes) {
    if (node.status != NodeStatus::Up) continue;
    std::uint64_t used = 0;
    for (const auto& hosted : node.hosted_replicas) {
      if (auto it = shard_bytes.find(hosted); it != shard_bytes.end()) used += it->second;
    }
    order.push_back({&node, node.storage_capacity > used ? node.storage_capacity - used : 0});
  }
  if (replicas > order.size()) {
    throw GridError(GridErrc::Placement,
                    fmt::format("replication factor {} exceeds the {} UP nodes", replicas,
                                order.size()));
  }
  std::sort(order.begin(), order.end(), [](const Slot& a, const Slot& b) {
    if (a.free != b.free) return a.free > b.free;
    return a.node->node_id < b.node->node_id;
  });

  Placement placement;
  std::size_t cursor = 0;
  for (const auto& shard : shards) {
    auto& holders = placement[shard->id()];
    for (std::size_t scanned = 0; scanned < order.size() && holders.size() < replicas; ++scanned) {
      auto& slot = order[cursor % order.size()];
      ++cursor;
      if (slot.free < shard->byte_size() || holders.count(slot.node->node_id)) continue;
      holders.insert(slot.node->node_id);
      slot.free -= shard->byte_size();
    }
    if (holders.size() < replicas) {
      throw GridError(GridErrc::Placement,
                      fmt::format("insufficient storage to place shard '{}' ({} bytes) on {} nodes",
                                  shard->id(), shard->byte_size(), replicas));
    }
  }
  return placement;
}

void apply_placement(std::vector<NodeState>& nodes, const Placement& placement) {
  for (auto& node : nodes) {
    for (const auto& [shard, holders] : placement) {
      if (holders.count(node.node_id)) node.hosted_replicas.insert(shard);
    }
  }
}

FailurePlan random_failure_plan(std::span<const NodeState> nodes, std::uint64_t seed,
                                SimTime horizon, std::size_t count, SimTime max_outage) {
  FailurePlan plan;
  if (nodes.empty()) return plan;
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kSteps = 1000;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& node = nodes[rng() % nodes.size()];
    const auto down = horizon * Rational(static_cast<std::int64_t>(rng() % kSteps), kSteps);
    const auto outage =
        max_outage * Rational(static_cast<std::int64_t>(1 + rng() % kSteps), kSteps);
    plan.push_back(FailureEvent{node.node_id, down, down + outage});
  }
  std::sort(plan.begin(), plan.end(), [](const FailureEvent& a, const FailureEvent& b) {
    if (a.down != b.down) return a.down < b.down;
    return a.node_id < b.node_id;
  });
  return plan;
}

// ---------------------------------------------------------------------------
// Regulations

ReadOnceHandle::ReadOnceHandle(ShardPtr shard) : shard_(std::move(shard)) {
  if (!shard_) throw std::invalid_argument("read-once handle needs a shard");
}

const std::string& ReadOnceHandle::shard_id() const { return shard_->id(); }

void ReadOnceHandle::stream(const SentenceVisitor& visit) {
  if (consumed_) {
    throw GridError(GridErrc::RegulationViolation,
                    fmt::format("shard '{}' was already released", shard_->id()));
  }
  consumed_ = true;
  shard_->for_each_sentence([&](const SentenceView& s) {
    tokens_delivered_ += s.tokens.size();
    visit(s);
  });
}

void ArtifactSink::emit(JobOutput output) {
  if (output_) {
    throw GridError(GridErrc::RegulationViolation, "a job may produce only one output artifact");
  }
  output_ = std::move(output);
}

JobOutput ArtifactSink::take() {
  if (!output_) throw GridError(GridErrc::RegulationViolation, "job produced no output artifact");
  auto out = std::move(*output_);
  output_.reset();
  return out;
}

Extractor make_extractor(const JobOperation& operation) {
  if (const auto* op = std::get_if<ExtractPairsOp>(&operation)) {
    return [mode = op->mode](ReadOnceHandle& handle, ArtifactSink& sink) {
      PairExtractor extractor(mode);
      handle.stream([&](const SentenceView& s) { extractor.consume(s); });
      sink.emit(extractor.take());
    };
  }
  return [rule = std::get<MatchPatternOp>(operation).rule](ReadOnceHandle& handle,
                                                           ArtifactSink& sink) {
    PatternMatcher matcher(rule);
    handle.stream([&](const SentenceView& s) { matcher.consume(s); });
    sink.emit(matcher.take());
  };
}

JobOutput execute_with(const Extractor& extractor, ReadOnceHandle& handle) {
  if (handle.consumed()) {
    throw GridError(GridErrc::RegulationViolation,
                    fmt::format("shard '{}' was already released", handle.shard_id()));
  }
  ArtifactSink sink;
  extractor(handle, sink);
  return sink.take();
}

JobOutput execute_job(const JobSpec& job, ReadOnceHandle& handle) {
  if (handle.shard_id() != job.shard_id) {
    throw std::invalid_argument(fmt::format("job '{}' targets shard '{}' but got a handle on '{}'",
                                            job.job_id, job.shard_id, handle.shard_id()));
  }
  return execute_with(make_extractor(job.operation), handle);
}

// ---------------------------------------------------------------------------
// Broker

void check_certificate(const Certificate& cert, const GridPolicy& policy) {
  if (!cert.valid) {
    throw GridError(GridErrc::AccessDenied, fmt::format("certificate of '{}' is not valid", cert.user));
  }
  const auto vo = std::find_if(policy.vos.begin(), policy.vos.end(),
                               [&](const VirtualOrg& v) { return v.name == cert.vo; });
  if (vo == policy.vos.end()) {
    throw GridError(GridErrc::AccessDenied, fmt::format("unknown vo '{}'", cert.vo));
  }
  if (!vo->members.empty() && !vo->members.count(cert.user)) {
    throw GridError(GridErrc::AccessDenied,
                    fmt::format("user '{}' is not a member of vo '{}'", cert.user, cert.vo));
  }
}

BrokerDecision broker_select(const JobSpec& job, const ShardSize& shard,
                             std::span<const NodeState> nodes, const Placement& placement,
                             const GridPolicy& policy, SimTime now) {
  check_certificate(job.cert, policy);
  const bool vo_served = std::any_of(nodes.begin(), nodes.end(),
                                     [&](const NodeState& n) { return n.supports(job.cert.vo); });
  if (!vo_served) {
    throw GridError(GridErrc::AccessDenied,
                    fmt::format("no node accepts jobs from vo '{}'", job.cert.vo));
  }

  static const std::set<std::string> kNoHolders;
  const auto holders_it = placement.find(job.shard_id);
  const auto& holders = holders_it == placement.end() ? kNoHolders : holders_it->second;

  auto available = [&](const NodeState& n) { return std::max(n.busy_until, now); };
  auto better = [&](const NodeState* a, const NodeState* b) {
    const auto ta = available(*a);
    const auto tb = available(*b);
    if (ta != tb) return ta < tb;
    if (a->power != b->power) return a->power > b->power;
    return a->node_id < b->node_id;
  };

  const NodeState* best_local = nullptr;
  const NodeState* best_remote = nullptr;
  bool source_up = false;
  for (const auto& node : nodes) {
    if (node.status != NodeStatus::Up) continue;
    const bool holds = holders.count(node.node_id) != 0;
    source_up = source_up || holds;
    if (!node.supports(job.cert.vo)) continue;
    auto& best = holds ? best_local : best_remote;
    if (best == nullptr || better(&node, best)) best = &node;
  }

  BrokerDecision decision;
  const NodeState* chosen = best_local;
  if (chosen == nullptr) {
    if (!source_up || best_remote == nullptr) {
      throw GridError(GridErrc::NoResource,
                      fmt::format("no eligible node can reach shard '{}' for job '{}'",
                                  job.shard_id, job.job_id));
    }
    chosen = best_remote;
    decision.local = false;
    decision.transfer_time = Rational(static_cast<std::int64_t>(shard.byte_size)) / policy.bandwidth;
  }
  decision.node_id = chosen->node_id;
  decision.run_time = Rational(static_cast<std::int64_t>(shard.token_count)) / chosen->power;
  decision.finish_estimate = available(*chosen) + decision.transfer_time + decision.run_time;
  return decision;
}

// ---------------------------------------------------------------------------
// Local-parallel execution

std::vector<JobOutput> run_parallel(const std::vector<JobSpec>& jobs,
                                    const std::vector<ShardPtr>& shards, std::size_t workers) {
  std::map<std::string, ShardPtr, std::less<>> by_id;
  for (const auto& s : shards) by_id[s->id()] = s;
  for (const auto& job : jobs) {
    if (!by_id.count(job.shard_id)) {
      throw std::invalid_argument(fmt::format("job '{}' names unknown shard '{}'", job.job_id,
                                              job.shard_id));
    }
  }

  std::vector<std::optional<JobOutput>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (auto i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      try {
        ReadOnceHandle handle(by_id.at(jobs[i].shard_id));
        slots[i] = execute_job(jobs[i], handle);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<JobOutput> outputs;
  outputs.reserve(slots.size());
  for (auto& s : slots) outputs.push_back(std::move(*s));
  return outputs;
}

std::vector<JobSpec> make_jobs(const std::vector<ShardPtr>& shards, const JobOperation& operation,
                               const Certificate& cert) {
  std::vector<JobSpec> jobs;
  jobs.reserve(shards.size());
  for (const auto& s : shards) {
    jobs.push_back(JobSpec{fmt::format("job-{}", s->id()), s->id(), operation, cert});
  }
  return jobs;
}

PairTable merge_outputs(const std::vector<JobOutput>& outputs) {
  PairTable merged;
  for (const auto& out : outputs) {
    if (const auto* table = std::get_if<PairTable>(&out)) {
      merged += *table;
    } else {
      merged += pairs_from_matches(std::get<MatchList>(out));
    }
  }
  return merged;
}

}  // namespace lingrid
