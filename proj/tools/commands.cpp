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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lingrid/aggregate.hpp"
#include "lingrid/corpus.hpp"
#include "lingrid/generator.hpp"
#include "lingrid/gridsim.hpp"
#include "lingrid/patterns.hpp"
#include "lingrid/terms.hpp"

namespace lingrid::cli {

namespace fs = std::filesystem;

namespace {

// Bad input files or flag combinations; exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Files

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot write file", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// `-` or empty writes to the output stream.
void emit(const std::string& target, std::string_view content, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << content;
  } else {
    write_file(target, content);
  }
}

bool is_manifest(const fs::path& p) { return p.extension() == ".tsv"; }

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".vert") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      if (found.empty()) throw UsageError(fmt::format("{}: no .vert files in directory", in));
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

std::vector<Document> load_documents(const std::vector<fs::path>& files) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw UsageError(fmt::format("{}: cannot open file", f.string()));
    std::vector<Document> part;
    try {
      part = parse_vertical(in);
    } catch (const ParseError& e) {
      std::string_view msg = e.what();
      if (const auto colon = msg.find(": "); colon != std::string_view::npos) msg.remove_prefix(colon + 2);
      throw UsageError(fmt::format("{}:{}: {}", f.string(), e.line(), msg));
    }
    for (auto& d : part) {
      if (!ids.insert(d.id).second) {
        throw UsageError(fmt::format("{}: document id '{}' already seen in an earlier file", f.string(), d.id));
      }
      docs.push_back(std::move(d));
    }
  }
  return docs;
}

enum class ShardBy { Domain, Size };

struct Corpus {
  std::vector<ShardPtr> shards;
  bool from_manifest = false;
};

std::vector<ShardPtr> to_ptrs(std::vector<Shard> shards) {
  std::vector<ShardPtr> out;
  out.reserve(shards.size());
  for (auto& s : shards) out.push_back(std::make_shared<const Shard>(std::move(s)));
  return out;
}

// Manifests are used as they are; corpus files are sharded with `count`
// shards per domain (ShardBy::Domain) or in total (ShardBy::Size).
Corpus load_corpus(const std::vector<std::string>& inputs, std::size_t count, ShardBy by) {
  const auto files = expand_inputs(inputs);
  const auto manifests = std::count_if(files.begin(), files.end(), is_manifest);
  Corpus corpus;
  if (manifests > 0) {
    if (static_cast<std::size_t>(manifests) != files.size()) {
      throw UsageError("manifest and corpus inputs cannot be mixed");
    }
    std::set<std::string> ids;
    for (const auto& m : files) {
      std::vector<ShardPtr> part;
      try {
        part = load_manifest(m.string());
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      for (auto& s : part) {
        if (!ids.insert(s->id()).second) throw UsageError(fmt::format("duplicate shard id '{}'", s->id()));
        corpus.shards.push_back(std::move(s));
      }
    }
    corpus.from_manifest = true;
    return corpus;
  }
  const auto docs = load_documents(files);
  corpus.shards = to_ptrs(by == ShardBy::Domain ? shard_by_domain(docs, count) : shard_corpus(docs, count));
  return corpus;
}

// A whole corpus as one shard, for sequential passes.
std::vector<ShardPtr> load_sequential(const std::vector<std::string>& inputs) {
  return load_corpus(inputs, 1, ShardBy::Size).shards;
}

std::vector<PatternRule> load_patterns(const std::string& path) {
  const auto text = read_file(path);
  std::vector<PatternRule> rules;
  try {
    rules = parse_pattern_file(text);
  } catch (const PatternError& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
  if (rules.empty()) throw UsageError(fmt::format("{}: no pattern rules", path));
  return rules;
}

GridConfig load_config(const std::string& path) {
  try {
    return load_grid_config(path);
  } catch (const GridError& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
}

// ---------------------------------------------------------------------------
// Options

struct CorpusOptions {
  std::vector<std::string> inputs;
  std::size_t shards = 1;
  std::string shard_by = "domain";
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& o, bool sharded) {
  cmd->add_option("inputs", o.inputs, "Vertical corpus files, directories of .vert files, or manifests")
      ->required()
      ->check(CLI::ExistingPath);
  if (sharded) {
    cmd->add_option("--shards", o.shards, "Shards per domain (or in total with --shard-by size)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--shard-by", o.shard_by, "Sharding rule")->check(CLI::IsMember({"domain", "size"}));
  }
}

ShardBy shard_by(const CorpusOptions& o) { return o.shard_by == "size" ? ShardBy::Size : ShardBy::Domain; }

struct FilterOptions {
  std::uint64_t min_freq = 1;
  std::uint64_t exception_min = 2;
  double mwe_ratio = kDefaultMweRatio;
  std::optional<std::size_t> top_k;
  std::string pairs = "NA";
  std::string pattern;
};

void add_filter_options(CLI::App* cmd, FilterOptions& o) {
  cmd->add_option("--min-freq", o.min_freq, "Minimum noun frequency for a head")->check(CLI::PositiveNumber);
  cmd->add_option("--exception-min", o.exception_min,
                  "Minimum count of a sole modifier that keeps a rare head")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mwe-ratio", o.mwe_ratio, "pair/noun ratio that marks a multiword expression")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--top-k", o.top_k, "Keep only the first k report lines")->check(CLI::PositiveNumber);
  cmd->add_option("--pairs", o.pairs, "Pair extraction mode")->check(CLI::IsMember({"NA", "NN"}));
  cmd->add_option("--pattern", o.pattern, "Pattern rule file; replaces pair extraction")
      ->check(CLI::ExistingFile);
}

struct GridOptions {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::size_t random_failures = 0;
};

void add_grid_options(CLI::App* cmd, GridOptions& o) {
  cmd->add_option("--config", o.config, "Grid configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Seed for every random choice")->required();
  cmd->add_option("--replicas", o.replicas, "Replicas per shard")->check(CLI::PositiveNumber);
  cmd->add_option("--random-failures", o.random_failures,
                  "Add this many seeded node outages to the failure plan");
}

struct Outputs {
  std::string report;
  std::string candidates;
};

// ---------------------------------------------------------------------------
// Pipeline pieces

JobOperation pair_operation(const FilterOptions& f) { return ExtractPairsOp{parse_pair_mode(f.pairs)}; }

std::vector<JobSpec> build_jobs(const std::vector<ShardPtr>& shards, const FilterOptions& f,
                                const Certificate& cert) {
  if (f.pattern.empty()) return make_jobs(shards, pair_operation(f), cert);
  const auto rules = load_patterns(f.pattern);
  if (rules.size() == 1) return make_jobs(shards, MatchPatternOp{rules.front()}, cert);
  std::vector<JobSpec> jobs;
  for (const auto& rule : rules) {
    for (auto job : make_jobs(shards, MatchPatternOp{rule}, cert)) {
      job.job_id += "-" + rule.name;
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

Outputs finish_tables(const PairTable& merged, const FilterOptions& f) {
  const FilterConfig cfg{f.min_freq, f.exception_min, parse_pair_mode(f.pairs)};
  const auto candidates = flag_mwe(filter_terms(merged, cfg), f.mwe_ratio);
  return {render_report(candidates_to_table(candidates), f.top_k), render_candidates(candidates)};
}

Certificate default_certificate(const GridConfig& cfg) {
  if (cfg.certificate) return *cfg.certificate;
  if (cfg.policy.vos.empty()) throw UsageError("grid config declares no vo");
  return Certificate{"lm", cfg.policy.vos.front().name, true};
}

struct GridRun {
  SimulationInput input;
  std::size_t shard_count = 0;
};

GridRun prepare_grid(const CorpusOptions& c, const GridOptions& g, const FilterOptions& f) {
  auto cfg = load_config(g.config);
  GridRun run;
  const auto corpus = load_corpus(c.inputs, c.shards, shard_by(c));
  run.shard_count = corpus.shards.size();
  auto& in = run.input;
  in.shards = corpus.shards;
  in.placement = place_replicas(in.shards, cfg.nodes, g.replicas);
  apply_placement(cfg.nodes, in.placement);
  in.policy = cfg.policy;
  in.failures = cfg.failures;
  in.seed = g.seed;
  if (g.random_failures > 0 && !cfg.nodes.empty()) {
    std::uint64_t tokens = 0;
    for (const auto& s : in.shards) tokens += s->token_count();
    Rational power{0};
    for (const auto& n : cfg.nodes) power += n.power;
    const SimTime horizon = Rational(static_cast<std::int64_t>(std::max<std::uint64_t>(tokens, 1))) / power;
    auto extra = random_failure_plan(cfg.nodes, g.seed, horizon, g.random_failures, horizon / 2);
    in.failures.insert(in.failures.end(), extra.begin(), extra.end());
  }
  in.nodes = std::move(cfg.nodes);
  in.jobs = build_jobs(in.shards, f, default_certificate(cfg));
  return run;
}

nlohmann::ordered_json sim_summary(const std::string& mode, const GridRun& run, const SimReport& report,
                                   std::size_t replicas) {
  std::size_t completed = 0;
  for (const auto& j : report.jobs) completed += j.status == JobStatus::Completed ? 1 : 0;
  nlohmann::ordered_json j;
  j["mode"] = mode;
  j["seed"] = report.seed;
  j["shards"] = run.shard_count;
  j["replicas"] = replicas;
  j["nodes"] = run.input.nodes.size();
  j["jobs"] = report.jobs.size();
  j["completed"] = completed;
  j["retries"] = report.total_retries();
  j["makespan"] = format_rational(report.makespan);
  j["makespan_seconds"] = boost::rational_cast<double>(report.makespan);
  return j;
}

// Writes the event log and job table, then reports any job that did not
// complete. Returns false if one failed.
bool write_sim_files(const fs::path& dir, const SimReport& report, std::ostream& err) {
  write_file(dir / "events.tsv", render_event_log(report));
  write_file(dir / "jobs.tsv", render_job_records(report));
  bool ok = true;
  for (const auto& j : report.jobs) {
    if (j.status != JobStatus::Completed) {
      err << fmt::format("error: job {} failed: {}\n", j.job_id, j.error);
      ok = false;
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_ingest(const CorpusOptions& c, const std::string& out_dir, std::ostream& out) {
  const auto docs = load_documents(expand_inputs(c.inputs));
  const auto shards = shard_by(c) == ShardBy::Domain ? shard_by_domain(docs, c.shards) : shard_corpus(docs, c.shards);
  std::vector<ManifestEntry> entries;
  std::uint64_t total = 0;
  for (const auto& s : shards) {
    const auto name = s.id() + ".vert";
    write_file(fs::path(out_dir) / name, write_vertical(s.documents()));
    entries.push_back({s.id(), s.domain(), s.token_count(), name});
    total += s.token_count();
  }
  write_file(fs::path(out_dir) / "manifest.tsv", write_manifest(entries));
  std::set<std::string> domains;
  for (const auto& s : shards) domains.insert(s.domain());
  out << fmt::format("{} shards, {} domains, {} tokens -> {}\n", shards.size(), domains.size(), total,
                     (fs::path(out_dir) / "manifest.tsv").string());
  return kExitOk;
}

int cmd_run(const CorpusOptions& c, const GridOptions& g, const FilterOptions& f, const std::string& mode,
            std::size_t workers, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  auto run = prepare_grid(c, g, f);
  const fs::path dir(out_dir);
  PairTable merged;
  nlohmann::ordered_json summary;
  if (mode == "sim") {
    const auto result = run_simulation(run.input);
    summary = sim_summary(mode, run, result.report, g.replicas);
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    if (!write_sim_files(dir, result.report, err)) return kExitRuntime;
    std::vector<JobOutput> outputs;
    for (const auto& o : result.outputs) outputs.push_back(*o);
    merged = merge_outputs(outputs);
  } else {
    for (const auto& job : run.input.jobs) {
      check_certificate(job.cert, run.input.policy);
      const bool served = std::any_of(run.input.nodes.begin(), run.input.nodes.end(),
                                      [&](const NodeState& n) { return n.supports(job.cert.vo); });
      if (!served) throw GridError(GridErrc::AccessDenied, fmt::format("no node accepts jobs from vo '{}'", job.cert.vo));
    }
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    merged = merge_outputs(run_parallel(run.input.jobs, run.input.shards, workers));
    summary["mode"] = mode;
    summary["seed"] = g.seed;
    summary["shards"] = run.shard_count;
    summary["jobs"] = run.input.jobs.size();
    write_file(dir / "summary.json", summary.dump(2) + "\n");
  }
  const auto outputs = finish_tables(merged, f);
  write_file(dir / "report.txt", outputs.report);
  write_file(dir / "candidates.tsv", outputs.candidates);
  out << fmt::format("{} jobs on {} shards", run.input.jobs.size(), run.shard_count);
  if (mode == "sim") out << fmt::format(", makespan {}", summary["makespan"].get<std::string>());
  out << fmt::format(" -> {}\n", (dir / "report.txt").string());
  return kExitOk;
}

int cmd_sim_only(const CorpusOptions& c, const GridOptions& g, const FilterOptions& f, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  auto run = prepare_grid(c, g, f);
  run.input.execute = false;
  const auto result = run_simulation(run.input);
  const fs::path dir(out_dir);
  const auto summary = sim_summary("sim", run, result.report, g.replicas);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  const bool ok = write_sim_files(dir, result.report, err);
  out << fmt::format("makespan {} retries {}\n", format_rational(result.report.makespan),
                     result.report.total_retries());
  return ok ? kExitOk : kExitRuntime;
}

int cmd_report(const CorpusOptions& c, const FilterOptions& f, const std::string& target,
               const std::string& candidates_path, std::ostream& out) {
  const auto shards = load_sequential(c.inputs);
  PairTable merged;
  if (f.pattern.empty()) {
    const auto mode = parse_pair_mode(f.pairs);
    for (const auto& s : shards) merged += extract_pairs(*s, mode);
  } else {
    for (const auto& rule : load_patterns(f.pattern)) {
      for (const auto& s : shards) merged += pairs_from_matches(match_pattern(*s, rule));
    }
  }
  const auto outputs = finish_tables(merged, f);
  emit(target, outputs.report, out);
  if (!candidates_path.empty()) write_file(candidates_path, outputs.candidates);
  return kExitOk;
}

int cmd_concord(const CorpusOptions& c, const std::string& lemma, std::size_t window, const std::string& target,
                std::ostream& out) {
  ConcordanceBuilder builder(lemma, window);
  for (const auto& s : load_sequential(c.inputs)) {
    s->for_each_sentence([&](const SentenceView& v) { builder.consume(v); });
  }
  emit(target, render_concordance(builder.result()), out);
  return kExitOk;
}

int cmd_cooc(const CorpusOptions& c, const std::string& lemma, std::size_t window, const std::string& target,
             std::ostream& out) {
  CooccurrenceCounter counter(lemma, window);
  for (const auto& s : load_sequential(c.inputs)) {
    s->for_each_sentence([&](const SentenceView& v) { counter.consume(v); });
  }
  emit(target, render_cooccurrences(counter.result()), out);
  return kExitOk;
}

int cmd_diachrony(const CorpusOptions& c, const std::string& head, const std::string& modifier,
                  const std::string& period, const std::string& pairs, const std::string& target,
                  std::ostream& out) {
  const auto series =
      diachronic_series(load_sequential(c.inputs), head, modifier, parse_period(period), parse_pair_mode(pairs));
  emit(target, render_series(series), out);
  return kExitOk;
}

struct GenerateOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::size_t documents = 8;
  std::size_t tokens = 500;
  std::vector<std::string> domains;
  std::vector<std::string> plant;
  std::string first_date;
  std::string last_date;
  double undated_rate = 0.0;
};

Date parse_date_flag(const std::string& text, std::string_view flag) {
  const auto d = parse_iso_date(text);
  if (!d) throw UsageError(fmt::format("{}: expected YYYY-MM-DD, got '{}'", flag, text));
  return *d;
}

// head:modifier:count[:YYYY-MM][:NN]
PlantedPair parse_plant(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 5 || parts[0].empty() || parts[1].empty()) {
    throw UsageError(fmt::format("--plant: expected head:modifier:count[:YYYY-MM][:NN], got '{}'", text));
  }
  PlantedPair p{to_lower_utf8(parts[0]), to_lower_utf8(parts[1]), 0, PosTag::Adj, std::nullopt};
  try {
    p.count = std::stoull(parts[2]);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("--plant: bad count in '{}'", text));
  }
  for (std::size_t i = 3; i < parts.size(); ++i) {
    if (parts[i] == "NN") {
      p.modifier_pos = PosTag::Noun;
    } else if (parts[i] == "NA") {
      p.modifier_pos = PosTag::Adj;
    } else if (const auto d = parse_iso_date(parts[i] + "-01")) {
      p.burst = d->year() / d->month();
    } else {
      throw UsageError(fmt::format("--plant: bad field '{}' in '{}'", parts[i], text));
    }
  }
  return p;
}

int cmd_generate(const GenerateOptions& g, std::ostream& out) {
  GeneratorSpec spec;
  spec.documents = g.documents;
  spec.tokens_per_document = g.tokens;
  if (!g.domains.empty()) spec.domains = g.domains;
  if (!g.first_date.empty() || !g.last_date.empty()) {
    if (g.first_date.empty() || g.last_date.empty()) throw UsageError("--first-date and --last-date go together");
    spec.first_date = parse_date_flag(g.first_date, "--first-date");
    spec.last_date = parse_date_flag(g.last_date, "--last-date");
  }
  spec.undated_rate = g.undated_rate;
  for (const auto& p : g.plant) spec.planted.push_back(parse_plant(p));
  const auto corpus = generate_corpus(g.seed, spec);
  std::ofstream file;
  std::ostream* sink = &out;
  if (g.out != "-") {
    if (fs::path(g.out).has_parent_path()) fs::create_directories(fs::path(g.out).parent_path());
    file.open(g.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error(fmt::format("{}: cannot write file", g.out));
    sink = &file;
  }
  write_vertical(*sink, corpus.documents);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lingrid: linguistic pattern mining on a simulated grid", "lingrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lingrid 0.1.0");

  std::string out_path;
  std::string candidates_path;
  std::string mode = "sim";
  std::size_t workers = 0;
  std::string lemma;
  std::size_t window = 5;
  std::string head;
  std::string modifier;
  std::string period = "month";
  CorpusOptions corpus;
  FilterOptions filter;
  GridOptions grid;
  GenerateOptions gen;

  auto* ingest = app.add_subcommand("ingest", "Parse and shard a corpus into a manifest directory");
  add_corpus_options(ingest, corpus, true);
  ingest->add_option("--out", out_path, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Extract, filter and report through the grid");
  add_corpus_options(run, corpus, true);
  add_grid_options(run, grid);
  add_filter_options(run, filter);
  run->add_option("--mode", mode, "Simulated grid or host threads")->check(CLI::IsMember({"sim", "parallel"}));
  run->add_option("--workers", workers, "Threads for --mode parallel (default: all cores)");
  run->add_option("--out", out_path, "Output directory")->required();

  auto* sim = app.add_subcommand("sim-only", "Schedule the jobs without extracting anything");
  add_corpus_options(sim, corpus, true);
  add_grid_options(sim, grid);
  sim->add_option("--pattern", filter.pattern, "Pattern rule file")->check(CLI::ExistingFile);
  sim->add_option("--out", out_path, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Sequential single-pass report");
  add_corpus_options(report, corpus, false);
  add_filter_options(report, filter);
  report->add_option("--out", out_path, "Report file (default stdout)");
  report->add_option("--candidates", candidates_path, "Also write the candidate TSV here");

  auto* concord = app.add_subcommand("concord", "Keyword-in-context lines for a lemma");
  add_corpus_options(concord, corpus, false);
  concord->add_option("--lemma", lemma, "Lemma, or several separated by spaces")->required();
  concord->add_option("--window", window, "Context tokens per side")->check(CLI::PositiveNumber);
  concord->add_option("--out", out_path, "Output file (default stdout)");

  auto* cooc = app.add_subcommand("cooc", "Left/right neighbour profile of a lemma");
  add_corpus_options(cooc, corpus, false);
  cooc->add_option("--lemma", lemma, "Target lemma")->required();
  cooc->add_option("--window", window, "Positions per side")->check(CLI::PositiveNumber);
  cooc->add_option("--out", out_path, "Output file (default stdout)");

  auto* diachrony = app.add_subcommand("diachrony", "Dated frequency series of one pair");
  add_corpus_options(diachrony, corpus, false);
  diachrony->add_option("--head", head, "Head noun lemma")->required();
  diachrony->add_option("--modifier", modifier, "Modifier lemma")->required();
  diachrony->add_option("--period", period, "Bucket size")->check(CLI::IsMember({"month", "year"}));
  diachrony->add_option("--pairs", filter.pairs, "Pair mode")->check(CLI::IsMember({"NA", "NN"}));
  diachrony->add_option("--out", out_path, "Output file (default stdout)");

  auto* generate = app.add_subcommand("generate", "Write a synthetic annotated corpus");
  generate->add_option("--seed", gen.seed, "Generator seed")->required();
  generate->add_option("--out", gen.out, "Output .vert file, or - for stdout")->required();
  generate->add_option("--documents", gen.documents, "Number of documents");
  generate->add_option("--tokens", gen.tokens, "Tokens per document");
  generate->add_option("--domains", gen.domains, "Domain labels, assigned round-robin")->delimiter(',');
  generate->add_option("--plant", gen.plant, "head:modifier:count[:YYYY-MM][:NN]");
  generate->add_option("--first-date", gen.first_date, "Earliest document date");
  generate->add_option("--last-date", gen.last_date, "Latest document date");
  generate->add_option("--undated-rate", gen.undated_rate, "Share of undated documents")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run `lingrid " << sub->get_name() << " --help` for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(corpus, out_path, out);
    if (run->parsed()) return cmd_run(corpus, grid, filter, mode, workers, out_path, out, err);
    if (sim->parsed()) return cmd_sim_only(corpus, grid, filter, out_path, out, err);
    if (report->parsed()) return cmd_report(corpus, filter, out_path, candidates_path, out);
    if (concord->parsed()) return cmd_concord(corpus, lemma, window, out_path, out);
    if (cooc->parsed()) return cmd_cooc(corpus, lemma, window, out_path, out);
    if (diachrony->parsed()) return cmd_diachrony(corpus, head, modifier, period, filter.pairs, out_path, out);
    if (generate->parsed()) return cmd_generate(gen, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == GridErrc::Config ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace lingrid::cli
