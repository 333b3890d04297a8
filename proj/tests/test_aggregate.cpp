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

#include <algorithm>
#include <random>

#include "lingrid/aggregate.hpp"
#include "lingrid/patterns.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace lingrid;

namespace {

PairTable random_table(std::mt19937_64& rng) {
  PairTable t;
  const auto heads = rng() % 12;
  for (std::uint64_t h = 0; h < heads; ++h) {
    const auto head = "h" + std::to_string(rng() % 15);
    t.add_noun(head, 1 + rng() % 20);
    for (auto m = rng() % 4; m > 0; --m) t.add_pair(head, "m" + std::to_string(rng() % 8), 1 + rng() % 5);
  }
  return t;
}

}  // namespace

TEST_CASE("merge_tables") {
  SUBCASE("pointwise addition") {
    PairTable a;
    a.add_noun("mucca", 2);
    a.add_pair("mucca", "pazzo", 1);
    PairTable b;
    b.add_noun("mucca", 2);
    b.add_pair("mucca", "pazzo", 2);
    b.add_pair("mucca", "malato", 1);
    const auto m = merge_tables(std::vector<PairTable>{a, b});
    CHECK(m.find("mucca")->noun_total == 4);
    CHECK(m.pair_count("mucca", "pazzo") == 3);
    CHECK(m.pair_count("mucca", "malato") == 1);
  }
  SUBCASE("identity cases") {
    CHECK(merge_tables({}).empty());
    const auto t = testing::mucca_table();
    CHECK(merge_tables(std::vector<PairTable>{t}) == t);
    CHECK(merge_tables(std::vector<PairTable>{t, PairTable{}}) == t);
  }
  SUBCASE("commutative and associative under 50 shuffles") {
    std::mt19937_64 rng(17);
    std::vector<PairTable> parts;
    for (int i = 0; i < 9; ++i) parts.push_back(random_table(rng));
    const auto reference = merge_tables(parts);
    for (int s = 0; s < 50; ++s) {
      std::shuffle(parts.begin(), parts.end(), rng);
      CHECK(merge_tables(parts) == reference);
      CHECK(merge_tables_parallel(parts, 1 + static_cast<std::size_t>(s % 5)) == reference);
      const auto cut = static_cast<long>(rng() % parts.size());
      const std::vector<PairTable> halves{merge_tables({parts.data(), static_cast<std::size_t>(cut)}),
                                          merge_tables({parts.data() + cut, parts.size() - cut})};
      CHECK(merge_tables(halves) == reference);
    }
  }
  SUBCASE("parallel reduction of nothing") { CHECK(merge_tables_parallel({}, 4).empty()); }
}

TEST_CASE("render_report") {
  SUBCASE("figure rows") {
    CHECK(render_report(testing::malattia_table()) == testing::kMalattiaLine);
    CHECK(render_report(testing::mucca_table()) == testing::kMuccaLine);
    auto both = testing::malattia_table();
    both += testing::mucca_table();
    CHECK(render_report(both) == testing::kMalattiaLine + testing::kMuccaLine);
    CHECK(render_report(both, 1) == testing::kMalattiaLine);
  }
  SUBCASE("empty and unpaired") {
    CHECK(render_report({}).empty());
    PairTable t;
    t.add_noun("cane", 10);
    CHECK(render_report(t).empty());
  }
  SUBCASE("padding and tie-break") {
    PairTable t;
    t.add_noun("b", 7);
    t.add_pair("b", "x", 1);
    t.add_noun("a", 7);
    t.add_pair("a", "y", 2);
    t.add_noun("c", 123456);
    t.add_pair("c", "z", 3);
    CHECK(render_report(t) == "123456\t[C]\tZ 3\n00007\t[A]\tY 2\n00007\t[B]\tX 1\n");
  }
  SUBCASE("report parses back to the paired heads") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto t = random_table(rng);
      PairTable paired;
      for (const auto& [h, e] : t.entries()) {
        if (e.modifiers.empty()) continue;
        paired.add_noun(h, e.noun_total);
        for (const auto& [m, c] : e.modifiers) paired.add_pair(h, m, c);
      }
      CHECK(parse_report(render_report(t)) == paired);
    }
    CHECK_THROWS_AS(parse_report("12\tMUCCA\tPAZZO 1\n"), std::invalid_argument);
  }
}

TEST_CASE("distributed output equals whole-corpus output") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto docs = testing::random_docs(seed, 4000, 10);
    const auto whole = render_report(extract_pairs(Shard("all", "mixed", docs), PairMode::NounAdj));
    for (std::size_t k = 1; k <= 8; ++k) {
      std::vector<PairTable> parts;
      for (const auto& s : shard_corpus(docs, k)) parts.push_back(extract_pairs(s, PairMode::NounAdj));
      CHECK(render_report(merge_tables(parts)) == whole);
    }
  }
}
