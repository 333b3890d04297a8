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

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "lingrid/aggregate.hpp"
#include "lingrid/generator.hpp"
#include "lingrid/gridsim.hpp"
#include "lingrid/patterns.hpp"

using namespace lingrid;

namespace {

std::vector<Document> corpus(std::size_t tokens) {
  GeneratorSpec spec;
  spec.documents = 20;
  spec.tokens_per_document = tokens / spec.documents;
  return generate_corpus(42, spec).documents;
}

void BM_ExtractPairs(benchmark::State& state) {
  const Shard shard("s", "mixed", corpus(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(extract_pairs(shard, PairMode::NounAdj));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shard.token_count()));
}
BENCHMARK(BM_ExtractPairs)->Arg(10'000)->Arg(100'000);

void BM_MatchPattern(benchmark::State& state) {
  const Shard shard("s", "mixed", corpus(static_cast<std::size_t>(state.range(0))));
  const auto rule = parse_pattern("NOUN GAP{0,2} ADJ");
  for (auto _ : state) benchmark::DoNotOptimize(match_pattern(shard, rule));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shard.token_count()));
}
BENCHMARK(BM_MatchPattern)->Arg(10'000)->Arg(100'000);

void BM_MergeTables(benchmark::State& state) {
  const auto shards = shard_corpus(corpus(200'000), static_cast<std::size_t>(state.range(0)));
  std::vector<PairTable> parts;
  for (const auto& s : shards) parts.push_back(extract_pairs(s, PairMode::NounAdj));
  for (auto _ : state) benchmark::DoNotOptimize(merge_tables(parts));
}
BENCHMARK(BM_MergeTables)->Arg(4)->Arg(16);

void BM_MergeTablesParallel(benchmark::State& state) {
  const auto shards = shard_corpus(corpus(200'000), 16);
  std::vector<PairTable> parts;
  for (const auto& s : shards) parts.push_back(extract_pairs(s, PairMode::NounAdj));
  for (auto _ : state) benchmark::DoNotOptimize(merge_tables_parallel(parts, 4));
}
BENCHMARK(BM_MergeTablesParallel);

// Scheduling only: event loop, broker and failure handling without extraction.
void BM_Simulation(benchmark::State& state) {
  const auto jobs_wanted = static_cast<std::size_t>(state.range(0));
  std::vector<ShardPtr> shards;
  for (auto& s : shard_corpus(corpus(jobs_wanted * 500), jobs_wanted)) {
    shards.push_back(std::make_shared<const Shard>(std::move(s)));
  }
  std::vector<NodeState> nodes;
  for (int i = 0; i < 8; ++i) {
    NodeState n;
    n.node_id = "n" + std::to_string(i);
    n.power = Rational{100 + i * 10};
    n.storage_capacity = std::uint64_t{1} << 40;
    n.supported_vos = {"nlp"};
    nodes.push_back(std::move(n));
  }
  SimulationInput in;
  in.shards = shards;
  in.placement = place_replicas(shards, nodes, 2);
  apply_placement(nodes, in.placement);
  in.failures = random_failure_plan(nodes, 1, SimTime{100}, 4, SimTime{20});
  in.nodes = std::move(nodes);
  in.policy = GridPolicy{{VirtualOrg{"nlp", {}}}, Rational{1000}};
  in.jobs = make_jobs(shards, ExtractPairsOp{}, Certificate{"lm", "nlp", true});
  in.execute = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(in));
}
BENCHMARK(BM_Simulation)->Arg(16)->Arg(128);

}  // namespace
BENCHMARK_MAIN();
