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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lingrid/corpus.hpp"
#include "lingrid/pair_table.hpp"

namespace lingrid {

// ---------------------------------------------------------------------------
// Pattern rules
//
// A rule is a whitespace-separated sequence of elements:
//   NOUN            any token tagged NOUN
//   ADJ:pazzo       ADJ token with lemma "pazzo"
//   *:mucca         any token with lemma "mucca"
//   GAP{0,2}        between 0 and 2 arbitrary tokens
// `#` starts a comment. Rules may not begin or end with a gap and gap bounds
// are limited to 0 <= min <= max <= 5.

struct TokenConstraint {
  std::optional<PosTag> pos;  // nullopt = wildcard
  std::optional<std::string> lemma;

  bool accepts(const Token& token) const {
    return (!pos || token.pos == *pos) && (!lemma || token.lemma == *lemma);
  }

  friend bool operator==(const TokenConstraint&, const TokenConstraint&) = default;
};

struct Gap {
  unsigned min = 0;
  unsigned max = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

inline constexpr unsigned kMaxGap = 5;

using PatternElement = std::variant<TokenConstraint, Gap>;

struct PatternRule {
  std::string name;
  std::vector<PatternElement> elements;

  std::size_t constraint_count() const;

  friend bool operator==(const PatternRule&, const PatternRule&) = default;
};

class PatternError : public std::runtime_error {
 public:
  PatternError(std::size_t column, const std::string& message);
  std::size_t column() const { return column_; }  // 1-based

 private:
  std::size_t column_;
};

// The rule name defaults to the canonical printed form.
PatternRule parse_pattern(std::string_view text, std::string name = {});

// Canonical text; parse_pattern(print_pattern(r)).elements == r.elements.
std::string print_pattern(const PatternRule& rule);

// One rule per non-blank, non-comment line; names are `line<N>`.
std::vector<PatternRule> parse_pattern_file(std::string_view text);

// ---------------------------------------------------------------------------
// Matching

struct Match {
  std::string document_id;
  std::size_t sentence_index = 0;
  std::size_t token_start = 0;  // within the sentence
  std::size_t token_end = 0;    // exclusive
  std::vector<std::string> lemmas;  // tokens bound to constraints, gaps excluded

  friend bool operator==(const Match&, const Match&) = default;
};

using MatchList = std::vector<Match>;

/// Streaming matcher: at most one match per start position, choosing the
/// shortest gap lengths (left gap first) that complete the rule. Never looks
/// past the sentence it is given.
class PatternMatcher {
 public:
  explicit PatternMatcher(PatternRule rule);

  void consume(const SentenceView& sentence);
  const MatchList& matches() const { return matches_; }
  MatchList take() { return std::move(matches_); }

  // Match anchored at `start`, or nullopt.
  std::optional<std::size_t> match_at(std::span<const Token> tokens, std::size_t start,
                                      std::vector<std::size_t>& bound) const;

 private:
  bool extend(std::span<const Token> tokens, std::size_t element, std::size_t pos,
              std::vector<std::size_t>& bound, std::size_t& end) const;

  PatternRule rule_;
  MatchList matches_;
};

MatchList match_pattern(const Shard& shard, const PatternRule& rule);

// ---------------------------------------------------------------------------
// Pair extraction

enum class PairMode : std::uint8_t { NounAdj, NounNoun };

std::string_view to_string(PairMode mode);
PairMode parse_pair_mode(std::string_view text);

/// Single pass: every NOUN counts toward its head's total; NOUN immediately
/// followed by ADJ (NA) or by NOUN (NN) within a sentence adds one pair.
class PairExtractor {
 public:
  explicit PairExtractor(PairMode mode) : mode_(mode) {}

  void consume(const SentenceView& sentence);
  const PairTable& table() const { return table_; }
  PairTable take() { return std::move(table_); }

 private:
  PairMode mode_;
  PairTable table_;
};

PairTable extract_pairs(const Shard& shard, PairMode mode);

// Reduces a match list to (first bound lemma -> last bound lemma) counts.
// noun_total is the number of matches per head.
PairTable pairs_from_matches(const MatchList& matches);

// ---------------------------------------------------------------------------
// Concordances

struct ConcordanceLine {
  std::string document_id;
  std::size_t sentence_index = 0;
  std::size_t token_offset = 0;  // first matched token, counted from document start
  std::vector<std::string> left;
  std::vector<std::string> match;
  std::vector<std::string> right;

  friend bool operator==(const ConcordanceLine&, const ConcordanceLine&) = default;
};

struct Concordance {
  std::vector<std::string> keyword;  // lemma sequence; one entry for a single lemma
  std::size_t window = 0;
  std::vector<ConcordanceLine> lines;
};

// Keyword is one lemma or several separated by spaces (a multiword).
class ConcordanceBuilder {
 public:
  ConcordanceBuilder(std::string_view keyword, std::size_t window);

  void consume(const SentenceView& sentence);
  const Concordance& result() const { return result_; }
  Concordance take() { return std::move(result_); }

 private:
  Concordance result_;
};

Concordance concordance(const Shard& shard, std::string_view keyword, std::size_t window);

// `doc<TAB>sentence<TAB>offset<TAB>left<TAB>match<TAB>right`, tokens joined by spaces.
std::string render_concordance(const Concordance& conc);

// ---------------------------------------------------------------------------
// Co-occurrences

struct CooccurrenceProfile {
  std::string target;
  std::size_t window = 0;
  // (relative position, lemma) -> count; position 0 never appears.
  std::map<std::pair<int, std::string>, std::uint64_t> counts;

  friend bool operator==(const CooccurrenceProfile&, const CooccurrenceProfile&) = default;
};

class CooccurrenceCounter {
 public:
  CooccurrenceCounter(std::string_view target, std::size_t window);

  void consume(const SentenceView& sentence);
  const CooccurrenceProfile& result() const { return result_; }
  CooccurrenceProfile take() { return std::move(result_); }

 private:
  CooccurrenceProfile result_;
};

CooccurrenceProfile cooccurrences(const Shard& shard, std::string_view lemma, std::size_t window);

// `position<TAB>lemma<TAB>count`, ordered by position then lemma.
std::string render_cooccurrences(const CooccurrenceProfile& profile);

}  // namespace lingrid
