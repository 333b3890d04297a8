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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "lingrid/corpus.hpp"
#include "lingrid/gridsim.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace lingrid;

namespace {

const std::string kDemo = LINGRID_DEMO_DIR;
const std::string kCorpus = kDemo + "/corpus";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "lingrid_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Rational makespan(const fs::path& dir) {
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  return parse_rational(j.at("makespan").get<std::string>());
}

}  // namespace

TEST_CASE("ingest") {
  SUBCASE("demo corpus gives one shard group per domain") {
    const auto dir = scratch("ingest");
    const auto r = invoke({"ingest", kCorpus, "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto docs = parse_vertical(slurp(kCorpus + "/news.vert"));
    std::uint64_t total = 0;
    for (const auto& d : docs) total += d.token_count();

    std::ifstream manifest(dir / "manifest.tsv");
    const auto entries = parse_manifest(manifest);
    std::uint64_t sum = 0;
    std::set<std::string> domains;
    for (const auto& e : entries) {
      sum += e.token_count;
      domains.insert(e.domain);
    }
    CHECK(sum == total);
    CHECK(domains == std::set<std::string>{"agriculture", "environment", "history", "medicine"});
    CHECK(load_manifest((dir / "manifest.tsv").string()).size() == 4);

    const auto two = scratch("ingest2");
    REQUIRE(invoke({"ingest", kCorpus, "--out", two.string(), "--shards", "2"}).code == 0);
    std::ifstream m2(two / "manifest.tsv");
    CHECK(parse_manifest(m2).size() == 8);
  }
  SUBCASE("corrupt token line") {
    const auto dir = scratch("corrupt");
    { std::ofstream(dir / "bad.vert") << "#doc a medicine\nmucca\tmucca\tNOUN\npazza\tpazzo\n"; }
    const auto r = invoke({"ingest", (dir / "bad.vert").string(), "--out", (dir / "out").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.vert:3:") != std::string::npos);
  }
  SUBCASE("missing input") {
    CHECK(invoke({"ingest", "/nonexistent/x.vert", "--out", "/tmp/x"}).code == 2);
  }
}

TEST_CASE("run") {
  const auto a = scratch("run_a");
  const auto b = scratch("run_b");
  const std::vector<std::string> base{"run", kCorpus, "--config", kDemo + "/grid.cfg", "--seed", "7",
                                      "--replicas", "2", "--min-freq", "10"};
  auto with_out = [](std::vector<std::string> args, const fs::path& out) {
    args.push_back("--out");
    args.push_back(out.string());
    return args;
  };

  SUBCASE("deterministic") {
    REQUIRE(invoke(with_out(base, a)).code == 0);
    REQUIRE(invoke(with_out(base, b)).code == 0);
    for (const char* f : {"report.txt", "candidates.tsv", "events.tsv", "jobs.tsv", "summary.json"}) {
      CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK_FALSE(slurp(a / "report.txt").empty());
  }
  SUBCASE("one node against four") {
    REQUIRE(invoke(with_out(base, a)).code == 0);
    auto single = base;
    single[3] = kDemo + "/grid_single.cfg";
    single[7] = "1";
    REQUIRE(invoke(with_out(single, b)).code == 0);
    CHECK(makespan(b) == 4 * makespan(a));
    CHECK(slurp(a / "report.txt") == slurp(b / "report.txt"));
  }
  SUBCASE("failed node") {
    REQUIRE(invoke(with_out(base, a)).code == 0);
    auto failing = base;
    failing[3] = kDemo + "/grid_fail.cfg";
    REQUIRE(invoke(with_out(failing, b)).code == 0);
    CHECK(slurp(a / "report.txt") == slurp(b / "report.txt"));
    CHECK(slurp(b / "events.tsv").find("RESCHEDULE") != std::string::npos);
  }
  SUBCASE("parallel mode writes the same report") {
    REQUIRE(invoke(with_out(base, a)).code == 0);
    auto par = base;
    par.insert(par.end(), {"--mode", "parallel", "--workers", "3"});
    REQUIRE(invoke(with_out(par, b)).code == 0);
    CHECK(slurp(a / "report.txt") == slurp(b / "report.txt"));
    CHECK(slurp(a / "candidates.tsv") == slurp(b / "candidates.tsv"));
  }
  SUBCASE("pattern rules") {
    auto pat = base;
    pat.insert(pat.end(), {"--pattern", kDemo + "/rules.txt"});
    REQUIRE(invoke(with_out(pat, a)).code == 0);
    CHECK_FALSE(slurp(a / "report.txt").empty());
  }
  SUBCASE("usage errors") {
    auto no_seed = base;
    no_seed.erase(no_seed.begin() + 4, no_seed.begin() + 6);
    CHECK(invoke(with_out(no_seed, a)).code == 2);
    auto bad_mode = base;
    bad_mode.insert(bad_mode.end(), {"--mode", "cloud"});
    CHECK(invoke(with_out(bad_mode, a)).code == 2);
    const auto cfg = a / "broken.cfg";
    { std::ofstream(cfg) << "vo nlp\nnode n1 power=1\n"; }
    auto broken = base;
    broken[3] = cfg.string();
    const auto r = invoke(with_out(broken, b));
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SUBCASE("runtime failures exit 1") {
    const auto denied = a / "denied.cfg";
    { std::ofstream(denied) << "vo nlp\nvo hep\nnode n1 power=1 storage=100000000 vos=nlp\ncert lm hep\n"; }
    auto args = base;
    args[3] = denied.string();
    args[7] = "1";
    const auto r = invoke(with_out(args, b));
    CHECK(r.code == 1);
    CHECK(r.err.find("ACCESS_DENIED") != std::string::npos);

    const auto dead = a / "dead.cfg";
    { std::ofstream(dead) << "vo nlp\nnode n1 power=1 storage=100000000 vos=nlp\nfail n1 0 inf\n"; }
    args[3] = dead.string();
    const auto r2 = invoke(with_out(args, b));
    CHECK(r2.code == 1);
    CHECK(r2.err.find("NO_RESOURCE") != std::string::npos);
    CHECK(fs::exists(b / "events.tsv"));
  }
}

TEST_CASE("sim-only") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const std::vector<std::string> args{"sim-only", kCorpus, "--config", kDemo + "/grid.cfg", "--seed", "3",
                                      "--replicas", "2", "--random-failures", "3", "--out"};
  auto run = [&](const fs::path& out) {
    auto full = args;
    full.push_back(out.string());
    return invoke(full);
  };
  const auto ra = run(a);
  const auto rb = run(b);
  CHECK(ra.code == rb.code);
  CHECK(slurp(a / "events.tsv") == slurp(b / "events.tsv"));
  CHECK_FALSE(fs::exists(a / "report.txt"));
}

TEST_CASE("concord") {
  SUBCASE("absent lemma") {
    const auto r = invoke({"concord", kCorpus, "--lemma", "zzzz", "--window", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
  }
  SUBCASE("zero window") { CHECK(invoke({"concord", kCorpus, "--lemma", "mucca", "--window", "0"}).code == 2); }
  SUBCASE("matches the oracle scan") {
    const auto r = invoke({"concord", kCorpus, "--lemma", "mucca", "--window", "3"});
    REQUIRE(r.code == 0);
    const auto docs = parse_vertical(slurp(kCorpus + "/news.vert"));
    std::string expected;
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
      return s;
    };
    for (const auto& row : testing::brute_concordance(docs, "mucca", 3)) {
      expected += row.doc + "\t" + std::to_string(row.sentence) + "\t" + std::to_string(row.offset) + "\t" +
                  join(row.left) + "\t" + join(row.match) + "\t" + join(row.right) + "\n";
    }
    CHECK_FALSE(expected.empty());
    CHECK(r.out == expected);
  }
}

TEST_CASE("cooc, diachrony and report") {
  const auto cooc = invoke({"cooc", kCorpus, "--lemma", "mucca", "--window", "2"});
  CHECK(cooc.code == 0);
  CHECK(cooc.out.find("+1\tpazzo\t") != std::string::npos);

  const auto dir = scratch("series");
  const std::vector<std::string> series{"diachrony", kCorpus, "--head", "mucca", "--modifier", "pazzo",
                                        "--period", "month", "--out", (dir / "series.tsv").string()};
  REQUIRE(invoke(series).code == 0);
  const auto text = slurp(dir / "series.tsv");
  CHECK(text.find("2001-03-01\t31\t") != std::string::npos);

  const auto seq = invoke({"report", kCorpus, "--min-freq", "10"});
  REQUIRE(seq.code == 0);
  const auto grid = scratch("report_grid");
  REQUIRE(invoke({"run", kCorpus, "--config", kDemo + "/grid.cfg", "--seed", "1", "--min-freq", "10", "--out",
               grid.string()})
              .code == 0);
  CHECK(seq.out == slurp(grid / "report.txt"));
  CHECK(invoke({"report", kCorpus, "--top-k", "0"}).code == 2);
}

TEST_CASE("generate") {
  const auto a = invoke({"generate", "--seed", "5", "--out", "-", "--documents", "3", "--tokens", "50",
                      "--plant", "mucca:pazzo:4"});
  const auto b = invoke({"generate", "--seed", "5", "--out", "-", "--documents", "3", "--tokens", "50",
                      "--plant", "mucca:pazzo:4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto docs = parse_vertical(a.out);
  CHECK(docs.size() == 3);
  CHECK(extract_pairs(Shard("s", "x", docs), PairMode::NounAdj).pair_count("mucca", "pazzo") == 4);
  CHECK(invoke({"generate", "--seed", "5", "--out", "-", "--plant", "mucca"}).code == 2);
}

TEST_CASE("help and unknown commands") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
}
