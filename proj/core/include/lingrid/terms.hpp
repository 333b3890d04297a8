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
#include <string>
#include <string_view>
#include <vector>

#include "lingrid/corpus.hpp"
#include "lingrid/pair_table.hpp"
#include "lingrid/patterns.hpp"

namespace lingrid {

struct FilterConfig {
  std::uint64_t min_noun_freq = 1;
  // Sub-threshold heads with a single distinct modifier survive when that
  // pair occurs at least this often.
  std::uint64_t exception_min_pair = 2;
  PairMode mode = PairMode::NounAdj;
};

enum TermFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagMwe = 1u << 0,
  kFlagHyponymOfHead = 1u << 1,
  kFlagExceptionKept = 1u << 2,
};

struct TermCandidate {
  std::string head;
  std::string modifier;
  std::uint64_t pair_count = 0;
  std::uint64_t noun_total = 0;
  std::uint8_t flags = kFlagNone;

  bool has(TermFlag f) const { return (flags & f) != 0; }

  friend bool operator==(const TermCandidate&, const TermCandidate&) = default;
};

// Threshold on noun_total, with the single-modifier exception. The
// EXCEPTION_KEPT flag marks every head satisfying the exception condition,
// whether or not it also clears the threshold, so the flagged set does not
// depend on min_noun_freq. Output order: noun_total desc, pair_count desc,
// then (head, modifier) ascending.
std::vector<TermCandidate> filter_terms(const PairTable& table, const FilterConfig& cfg);

// Heuristic: pair_count / noun_total >= mwe_ratio marks a multiword
// expression, which is also taken as a hyponym of its head.
inline constexpr double kDefaultMweRatio = 0.5;
std::vector<TermCandidate> flag_mwe(std::vector<TermCandidate> candidates,
                                    double mwe_ratio = kDefaultMweRatio);

// Rebuilds a table containing only the retained heads.
PairTable candidates_to_table(const std::vector<TermCandidate>& candidates);

std::string format_flags(std::uint8_t flags);

// `head<TAB>modifier<TAB>pair_count<TAB>noun_total<TAB>flags`
std::string render_candidates(const std::vector<TermCandidate>& candidates);

// ---------------------------------------------------------------------------
// Diachronic series

enum class Period : std::uint8_t { Month, Year };

Period parse_period(std::string_view text);

struct SeriesBucket {
  Date start;
  unsigned length_days = 0;
  std::uint64_t count = 0;

  friend bool operator==(const SeriesBucket&, const SeriesBucket&) = default;
};

struct DiachronicSeries {
  std::string head;
  std::string modifier;
  Period period = Period::Month;
  std::vector<SeriesBucket> buckets;  // contiguous, chronological

  std::uint64_t total() const;
};

/// Streaming pair counter keyed by document date. Undated documents are
/// skipped.
class DiachronicCounter {
 public:
  DiachronicCounter(std::string_view head, std::string_view modifier,
                    PairMode mode = PairMode::NounAdj);

  void consume(const SentenceView& sentence);

  // Throws std::invalid_argument if no dated document was seen.
  DiachronicSeries finish(Period period) const;

 private:
  std::string head_;
  std::string modifier_;
  PosTag modifier_tag_;
  std::map<std::chrono::sys_days, std::uint64_t> by_day_;  // dated docs seen, even at 0
};

DiachronicSeries diachronic_series(const std::vector<ShardPtr>& shards, std::string_view head,
                                   std::string_view modifier, Period period,
                                   PairMode mode = PairMode::NounAdj);

// `start<TAB>length_days<TAB>count`
std::string render_series(const DiachronicSeries& series);

}  // namespace lingrid
