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

#include "lingrid/aggregate.hpp"
#include "lingrid/corpus.hpp"
#include "lingrid/generator.hpp"
#include "lingrid/patterns.hpp"
#include "support/oracles.hpp"

using namespace lingrid;

namespace {

Token tok(std::string lemma, PosTag pos) { return Token{lemma, lemma, pos}; }

Shard shard_of(std::vector<std::vector<Token>> sentences, std::string id = "d") {
  Document d{std::move(id), "medicine", std::nullopt, {}};
  for (auto& s : sentences) d.sentences.push_back(Sentence{std::move(s)});
  return Shard("s", "medicine", {std::move(d)});
}

std::size_t error_column(std::string_view text) {
  try {
    parse_pattern(text);
  } catch (const PatternError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_pattern") {
  SUBCASE("NOUN ADJ") {
    const auto r = parse_pattern("NOUN ADJ");
    REQUIRE(r.elements.size() == 2);
    CHECK(r.constraint_count() == 2);
    CHECK(std::get<TokenConstraint>(r.elements[0]).pos == PosTag::Noun);
    CHECK(std::get<TokenConstraint>(r.elements[1]).pos == PosTag::Adj);
  }
  SUBCASE("NOUN GAP{0,1} NOUN") {
    const auto r = parse_pattern("NOUN GAP{0,1} NOUN");
    REQUIRE(r.elements.size() == 3);
    CHECK(std::get<Gap>(r.elements[1]) == Gap{0, 1});
  }
  SUBCASE("leading and trailing gaps") {
    CHECK(error_column("GAP{0,1} NOUN") == 1);
    CHECK(error_column("NOUN GAP{0,1}") == 6);
  }
  SUBCASE("gap bounds") {
    CHECK(error_column("NOUN GAP{2,1} ADJ") == 6);
    CHECK(error_column("NOUN GAP{0,6} ADJ") == 6);
    CHECK_NOTHROW(parse_pattern("NOUN GAP{5,5} ADJ"));
  }
  SUBCASE("other syntax errors") {
    CHECK(error_column("") == 1);
    CHECK(error_column("   # only a comment") == 1);
    CHECK(error_column("NOUN PROPN") == 6);
    CHECK(error_column("NOUN *") == 6);
    CHECK(error_column("NOUN ADJ:") == 10);
    CHECK(error_column("NOUN GAP{1}") == 6);
  }
  SUBCASE("lemmas and wildcards") {
    const auto r = parse_pattern("*:Mucca ADJ:pazzo # comment");
    const auto& a = std::get<TokenConstraint>(r.elements[0]);
    CHECK_FALSE(a.pos.has_value());
    CHECK(a.lemma == "mucca");
    CHECK(std::get<TokenConstraint>(r.elements[1]).lemma == "pazzo");
  }
  SUBCASE("print/parse round trip") {
    for (const char* text : {"NOUN ADJ", "NOUN GAP{0,1} NOUN", "*:mucca GAP{2,5} ADJ:pazzo VERB",
                             "DET GAP{0,0} NOUN GAP{1,3} PUNCT"}) {
      const auto r = parse_pattern(text);
      CHECK(print_pattern(r) == text);
      CHECK(parse_pattern(print_pattern(r)).elements == r.elements);
    }
  }
  SUBCASE("pattern files") {
    const auto rules = parse_pattern_file("# rules\nNOUN ADJ\n\nNOUN NOUN  # nn\n");
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].name == "line2");
    CHECK(rules[1].name == "line4");
  }
}

TEST_CASE("match_pattern basics") {
  const auto na = parse_pattern("NOUN ADJ");
  SUBCASE("one match") {
    const auto s = shard_of({{tok("mucca", PosTag::Noun), tok("pazzo", PosTag::Adj)}});
    const auto m = match_pattern(s, na);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == Match{"d", 0, 0, 2, {"mucca", "pazzo"}});
  }
  SUBCASE("sentence boundary blocks the match") {
    const auto s = shard_of({{tok("x", PosTag::Noun), tok(".", PosTag::Punct)}, {tok("y", PosTag::Adj)}});
    CHECK(match_pattern(s, na).empty());
    const auto s2 = shard_of({{tok("x", PosTag::Noun)}, {tok("y", PosTag::Adj)}});
    CHECK(match_pattern(s2, na).empty());
  }
  SUBCASE("shortest gap wins") {
    const auto r = parse_pattern("NOUN GAP{0,2} ADJ");
    const auto s = shard_of({{tok("a", PosTag::Noun), tok("b", PosTag::Adj), tok("c", PosTag::Adj)}});
    const auto m = match_pattern(s, r);
    REQUIRE(m.size() == 1);
    CHECK(m[0].token_end == 2);
    CHECK(m[0].lemmas == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("overlapping matches from different starts") {
    const auto r = parse_pattern("NOUN GAP{0,1} NOUN");
    const auto s = shard_of({{tok("a", PosTag::Noun), tok("b", PosTag::Noun), tok("c", PosTag::Noun)}});
    const auto m = match_pattern(s, r);
    REQUIRE(m.size() == 2);
    CHECK(m[0].lemmas == std::vector<std::string>{"a", "b"});
    CHECK(m[1].lemmas == std::vector<std::string>{"b", "c"});
  }
}

TEST_CASE("match_pattern equals the exhaustive oracle") {
  const char* rules[] = {"NOUN GAP{0,1} ADJ", "NOUN ADJ", "NOUN GAP{0,1} NOUN",
                         "DET GAP{1,3} NOUN GAP{0,2} ADJ:pazzo", "*:mucca GAP{0,5} *:grave",
                         "NOUN GAP{2,2} VERB"};
  for (const char* text : rules) {
    const auto rule = parse_pattern(text);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const auto docs = testing::random_docs(seed, 5000);
      const Shard shard("s", "mixed", docs);
      CAPTURE(text);
      CAPTURE(seed);
      CHECK(match_pattern(shard, rule) == testing::brute_matches(docs, rule));
    }
  }
}

TEST_CASE("extract_pairs") {
  SUBCASE("counting by definition") {
    std::vector<std::vector<Token>> sentences;
    for (int i = 0; i < 3; ++i) sentences.push_back({tok("mucca", PosTag::Noun), tok("pazzo", PosTag::Adj)});
    sentences.push_back({tok("mucca", PosTag::Noun)});
    const auto table = extract_pairs(shard_of(sentences), PairMode::NounAdj);
    REQUIRE(table.size() == 1);
    CHECK(table.find("mucca")->noun_total == 4);
    CHECK(table.pair_count("mucca", "pazzo") == 3);
  }
  SUBCASE("empty shard") {
    CHECK(extract_pairs(Shard("s", "x", {}), PairMode::NounAdj).empty());
    CHECK(extract_pairs(Shard("s", "x", {}), PairMode::NounNoun).empty());
  }
  SUBCASE("NN keys the first noun") {
    const auto t = extract_pairs(shard_of({{tok("a", PosTag::Noun), tok("b", PosTag::Noun), tok("c", PosTag::Noun)}}),
                                 PairMode::NounNoun);
    CHECK(t.pair_count("a", "b") == 1);
    CHECK(t.pair_count("b", "c") == 1);
    CHECK(t.find("c")->noun_total == 1);
    CHECK(t.find("c")->modifiers.empty());
  }
  SUBCASE("brute-force oracle in both modes") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
      const auto docs = testing::random_docs(seed, 2000);
      const Shard shard("s", "mixed", docs);
      CHECK(extract_pairs(shard, PairMode::NounAdj) == testing::brute_pairs(docs, PairMode::NounAdj));
      CHECK(extract_pairs(shard, PairMode::NounNoun) == testing::brute_pairs(docs, PairMode::NounNoun));
    }
  }
  SUBCASE("NA equals the NOUN ADJ rule reduced to pairs") {
    const auto rule = parse_pattern("NOUN ADJ");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto docs = testing::random_docs(seed, 3000);
      const Shard shard("s", "mixed", docs);
      const auto from_rule = pairs_from_matches(match_pattern(shard, rule));
      const auto direct = extract_pairs(shard, PairMode::NounAdj);
      for (const auto& [head, entry] : from_rule.entries()) {
        for (const auto& [mod, count] : entry.modifiers) CHECK(direct.pair_count(head, mod) == count);
      }
      for (const auto& [head, entry] : direct.entries()) {
        for (const auto& [mod, count] : entry.modifiers) CHECK(from_rule.pair_count(head, mod) == count);
      }
    }
  }
  SUBCASE("additivity over document-preserving splits") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto docs = testing::random_docs(seed, 2500, 8);
      const std::size_t cut = docs.size() / 2;
      const Shard whole("w", "mixed", docs);
      const Shard a("a", "mixed", {docs.begin(), docs.begin() + static_cast<long>(cut)});
      const Shard b("b", "mixed", {docs.begin() + static_cast<long>(cut), docs.end()});
      const std::vector<PairTable> parts{extract_pairs(a, PairMode::NounAdj),
                                         extract_pairs(b, PairMode::NounAdj)};
      CHECK(merge_tables(parts) == extract_pairs(whole, PairMode::NounAdj));
    }
  }
  SUBCASE("lemma-level keys") {
    Document d{"d", "medicine", std::nullopt, {}};
    d.sentences.push_back(Sentence{{Token{"mucche", "mucca", PosTag::Noun}, Token{"pazze", "pazzo", PosTag::Adj}}});
    d.sentences.push_back(Sentence{{Token{"mucca", "mucca", PosTag::Noun}, Token{"pazza", "pazzo", PosTag::Adj}}});
    const auto t = extract_pairs(Shard("s", "medicine", {d}), PairMode::NounAdj);
    CHECK(t.pair_count("mucca", "pazzo") == 2);
  }
}

TEST_CASE("pair modes parse") {
  CHECK(parse_pair_mode("NA") == PairMode::NounAdj);
  CHECK(parse_pair_mode("NN") == PairMode::NounNoun);
  CHECK(to_string(PairMode::NounNoun) == "NN");
  CHECK_THROWS_AS(parse_pair_mode("AN"), std::invalid_argument);
}

TEST_CASE("concordance") {
  SUBCASE("absent lemma") {
    const auto s = shard_of({{tok("a", PosTag::Noun)}});
    CHECK(concordance(s, "zzz", 3).lines.empty());
    CHECK(render_concordance(concordance(s, "zzz", 3)).empty());
  }
  SUBCASE("single token sentence has empty contexts") {
    const auto s = shard_of({{tok("b", PosTag::Noun), tok("c", PosTag::Noun)}, {tok("a", PosTag::Verb)}});
    const auto c = concordance(s, "a", 3);
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0].left.empty());
    CHECK(c.lines[0].right.empty());
    CHECK(c.lines[0].token_offset == 2);
    CHECK(c.lines[0].sentence_index == 1);
  }
  SUBCASE("zero window is rejected") { CHECK_THROWS_AS(ConcordanceBuilder("a", 0), std::invalid_argument); }
  SUBCASE("brute-force scan on 2k-token shards") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto docs = testing::random_docs(seed, 2000);
      const Shard shard("s", "mixed", docs);
      for (const char* lemma : {"mucca", "pazzo", "verde"}) {
        const auto got = concordance(shard, lemma, 3);
        const auto want = testing::brute_concordance(docs, lemma, 3);
        REQUIRE(got.lines.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
          const auto& g = got.lines[i];
          CHECK(testing::ConcordanceRow{g.document_id, g.sentence_index, g.token_offset, g.left, g.match,
                                        g.right} == want[i]);
        }
      }
    }
  }
  SUBCASE("multiword keyword") {
    const auto s = shard_of({{tok("la", PosTag::Det), tok("mucca", PosTag::Noun), tok("pazzo", PosTag::Adj),
                              tok("corre", PosTag::Verb)}});
    const auto c = concordance(s, "mucca pazzo", 1);
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0].match == std::vector<std::string>{"mucca", "pazzo"});
    CHECK(c.lines[0].left == std::vector<std::string>{"la"});
    CHECK(c.lines[0].right == std::vector<std::string>{"corre"});
    CHECK(render_concordance(c) == "d\t0\t1\tla\tmucca pazzo\tcorre\n");
  }
}

TEST_CASE("cooccurrences") {
  const auto s = shard_of({{tok("a", PosTag::Noun), tok("b", PosTag::Adj)}});
  SUBCASE("right neighbour") {
    const auto p = cooccurrences(s, "a", 1);
    CHECK(p.counts == std::map<std::pair<int, std::string>, std::uint64_t>{{{1, "b"}, 1}});
    CHECK(render_cooccurrences(p) == "+1\tb\t1\n");
  }
  SUBCASE("mirror") {
    const auto p = cooccurrences(s, "b", 1);
    CHECK(p.counts == std::map<std::pair<int, std::string>, std::uint64_t>{{{-1, "a"}, 1}});
  }
  SUBCASE("quadratic oracle and mirror symmetry on random shards") {
    const char* lemmas[] = {"mucca", "pazzo", "grave", "terra"};
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const auto docs = testing::random_docs(seed, 1500);
      const Shard shard("s", "mixed", docs);
      for (std::size_t w = 1; w <= 4; ++w) {
        for (const char* a : lemmas) {
          const auto pa = cooccurrences(shard, a, w);
          CHECK(pa.counts == testing::brute_cooccurrences(docs, a, w));
          for (const auto& [key, count] : pa.counts) {
            CHECK(key.first != 0);
            const auto pb = cooccurrences(shard, key.second, w);
            const auto it = pb.counts.find({-key.first, a});
            REQUIRE(it != pb.counts.end());
            CHECK(it->second == count);
          }
        }
      }
    }
  }
}

TEST_CASE("streaming extractors never look across sentences") {
  PatternMatcher m(parse_pattern("NOUN GAP{0,5} ADJ"));
  std::vector<Token> tokens{tok("a", PosTag::Noun), tok("b", PosTag::Verb)};
  std::vector<std::size_t> bound;
  CHECK_FALSE(m.match_at(tokens, 0, bound).has_value());
}
