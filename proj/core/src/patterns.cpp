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

#include <stdexcept>

#include <fmt/format.h>

#include "lingrid/patterns.hpp"

namespace lingrid {

namespace {

std::vector<std::string> split_keyword(std::string_view keyword) {
  std::vector<std::string> lemmas;
  std::size_t i = 0;
  while (i < keyword.size()) {
    while (i < keyword.size() && keyword[i] == ' ') ++i;
    const auto start = i;
    while (i < keyword.size() && keyword[i] != ' ') ++i;
    if (i > start) lemmas.push_back(to_lower_utf8(keyword.substr(start, i - start)));
  }
  return lemmas;
}

void require_window(std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be at least 1");
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PatternMatcher

PatternMatcher::PatternMatcher(PatternRule rule) : rule_(std::move(rule)) {
  if (rule_.elements.empty()) throw std::invalid_argument("empty pattern rule");
}

bool PatternMatcher::extend(std::span<const Token> tokens, std::size_t element, std::size_t pos,
                            std::vector<std::size_t>& bound, std::size_t& end) const {
  if (element == rule_.elements.size()) {
    end = pos;
    return true;
  }
  if (const auto* gap = std::get_if<Gap>(&rule_.elements[element])) {
    for (unsigned len = gap->min; len <= gap->max && pos + len <= tokens.size(); ++len) {
      if (extend(tokens, element + 1, pos + len, bound, end)) return true;
    }
    return false;
  }
  const auto& constraint = std::get<TokenConstraint>(rule_.elements[element]);
  if (pos >= tokens.size() || !constraint.accepts(tokens[pos])) return false;
  bound.push_back(pos);
  if (extend(tokens, element + 1, pos + 1, bound, end)) return true;
  bound.pop_back();
  return false;
}

std::optional<std::size_t> PatternMatcher::match_at(std::span<const Token> tokens,
                                                    std::size_t start,
                                                    std::vector<std::size_t>& bound) const {
  bound.clear();
  std::size_t end = 0;
  if (extend(tokens, 0, start, bound, end)) return end;
  return std::nullopt;
}

void PatternMatcher::consume(const SentenceView& sentence) {
  const auto tokens = sentence.tokens;
  std::vector<std::size_t> bound;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    const auto end = match_at(tokens, start, bound);
    if (!end) continue;
    Match m;
    m.document_id = sentence.document.id;
    m.sentence_index = sentence.sentence_index;
    m.token_start = start;
    m.token_end = *end;
    m.lemmas.reserve(bound.size());
    for (auto idx : bound) m.lemmas.push_back(tokens[idx].lemma);
    matches_.push_back(std::move(m));
  }
}

MatchList match_pattern(const Shard& shard, const PatternRule& rule) {
  PatternMatcher matcher(rule);
  shard.for_each_sentence([&](const SentenceView& s) { matcher.consume(s); });
  return matcher.take();
}

// ---------------------------------------------------------------------------
// Pairs

std::string_view to_string(PairMode mode) {
  return mode == PairMode::NounAdj ? "NA" : "NN";
}

PairMode parse_pair_mode(std::string_view text) {
  if (text == "NA" || text == "na") return PairMode::NounAdj;
  if (text == "NN" || text == "nn") return PairMode::NounNoun;
  throw std::invalid_argument(fmt::format("unknown pair mode '{}' (expected NA or NN)", text));
}

void PairExtractor::consume(const SentenceView& sentence) {
  const auto tokens = sentence.tokens;
  const PosTag modifier_tag = mode_ == PairMode::NounAdj ? PosTag::Adj : PosTag::Noun;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos != PosTag::Noun) continue;
    table_.add_noun(tokens[i].lemma);
    if (i + 1 < tokens.size() && tokens[i + 1].pos == modifier_tag) {
      table_.add_pair(tokens[i].lemma, tokens[i + 1].lemma);
    }
  }
}

PairTable extract_pairs(const Shard& shard, PairMode mode) {
  PairExtractor extractor(mode);
  shard.for_each_sentence([&](const SentenceView& s) { extractor.consume(s); });
  return extractor.take();
}

PairTable pairs_from_matches(const MatchList& matches) {
  PairTable table;
  for (const auto& m : matches) {
    if (m.lemmas.empty()) continue;
    table.add_noun(m.lemmas.front());
    table.add_pair(m.lemmas.front(), m.lemmas.back());
  }
  return table;
}

// ---------------------------------------------------------------------------
// Concordance

ConcordanceBuilder::ConcordanceBuilder(std::string_view keyword, std::size_t window) {
  require_window(window);
  result_.keyword = split_keyword(keyword);
  result_.window = window;
}

void ConcordanceBuilder::consume(const SentenceView& sentence) {
  const auto& key = result_.keyword;
  const auto tokens = sentence.tokens;
  if (key.empty() || tokens.size() < key.size()) return;
  const auto w = result_.window;
  for (std::size_t i = 0; i + key.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < key.size() && hit; ++k) hit = tokens[i + k].lemma == key[k];
    if (!hit) continue;
    ConcordanceLine line;
    line.document_id = sentence.document.id;
    line.sentence_index = sentence.sentence_index;
    line.token_offset = sentence.document_offset + i;
    const auto right_begin = i + key.size();
    for (std::size_t j = i > w ? i - w : 0; j < i; ++j) line.left.push_back(tokens[j].surface);
    for (std::size_t j = i; j < right_begin; ++j) line.match.push_back(tokens[j].surface);
    for (std::size_t j = right_begin; j < tokens.size() && j < right_begin + w; ++j) {
      line.right.push_back(tokens[j].surface);
    }
    result_.lines.push_back(std::move(line));
  }
}

Concordance concordance(const Shard& shard, std::string_view keyword, std::size_t window) {
  ConcordanceBuilder builder(keyword, window);
  shard.for_each_sentence([&](const SentenceView& s) { builder.consume(s); });
  return builder.take();
}

std::string render_concordance(const Concordance& conc) {
  std::string out;
  for (const auto& line : conc.lines) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", line.document_id, line.sentence_index,
                       line.token_offset, join(line.left), join(line.match), join(line.right));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Co-occurrences

CooccurrenceCounter::CooccurrenceCounter(std::string_view target, std::size_t window) {
  require_window(window);
  result_.target = to_lower_utf8(target);
  result_.window = window;
}

void CooccurrenceCounter::consume(const SentenceView& sentence) {
  const auto tokens = sentence.tokens;
  const auto w = result_.window;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].lemma != result_.target) continue;
    for (std::size_t d = 1; d <= w; ++d) {
      if (d <= i) ++result_.counts[{-static_cast<int>(d), tokens[i - d].lemma}];
      if (i + d < tokens.size()) ++result_.counts[{static_cast<int>(d), tokens[i + d].lemma}];
    }
  }
}

CooccurrenceProfile cooccurrences(const Shard& shard, std::string_view lemma, std::size_t window) {
  CooccurrenceCounter counter(lemma, window);
  shard.for_each_sentence([&](const SentenceView& s) { counter.consume(s); });
  return counter.take();
}

std::string render_cooccurrences(const CooccurrenceProfile& profile) {
  std::string out;
  for (const auto& [key, count] : profile.counts) {
    out += fmt::format("{:+d}\t{}\t{}\n", key.first, key.second, count);
  }
  return out;
}

}  // namespace lingrid
