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

#include "lingrid/terms.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace lingrid {

std::vector<TermCandidate> filter_terms(const PairTable& table, const FilterConfig& cfg) {
  if (cfg.min_noun_freq == 0 || cfg.exception_min_pair == 0) {
    throw std::invalid_argument("filter thresholds must be at least 1");
  }
  std::vector<TermCandidate> out;
  for (const auto& [head, entry] : table.entries()) {
    if (entry.modifiers.empty()) continue;
    const bool exception = entry.modifiers.size() == 1 &&
                           entry.modifiers.begin()->second >= cfg.exception_min_pair;
    if (entry.noun_total < cfg.min_noun_freq && !exception) continue;
    for (const auto& [modifier, count] : entry.modifiers) {
      TermCandidate c{head, modifier, count, entry.noun_total, kFlagNone};
      if (exception) c.flags |= kFlagExceptionKept;
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const TermCandidate& a, const TermCandidate& b) {
    if (a.noun_total != b.noun_total) return a.noun_total > b.noun_total;
    if (a.pair_count != b.pair_count) return a.pair_count > b.pair_count;
    if (a.head != b.head) return a.head < b.head;
    return a.modifier < b.modifier;
  });
  return out;
}

std::vector<TermCandidate> flag_mwe(std::vector<TermCandidate> candidates, double mwe_ratio) {
  if (!(mwe_ratio > 0.0 && mwe_ratio <= 1.0)) {
    throw std::invalid_argument("MWE ratio must lie in (0, 1]");
  }
  for (auto& c : candidates) {
    if (c.noun_total == 0) continue;
    const double ratio = static_cast<double>(c.pair_count) / static_cast<double>(c.noun_total);
    if (ratio >= mwe_ratio) c.flags |= kFlagMwe | kFlagHyponymOfHead;
  }
  return candidates;
}

PairTable candidates_to_table(const std::vector<TermCandidate>& candidates) {
  PairTable table;
  std::map<std::string, std::uint64_t, std::less<>> totals;
  for (const auto& c : candidates) {
    totals.emplace(c.head, c.noun_total);
    table.add_pair(c.head, c.modifier, c.pair_count);
  }
  for (const auto& [head, total] : totals) table.add_noun(head, total);
  return table;
}

std::string format_flags(std::uint8_t flags) {
  std::string out;
  auto add = [&](std::string_view name) {
    if (!out.empty()) out += ',';
    out += name;
  };
  if (flags & kFlagMwe) add("MWE");
  if (flags & kFlagHyponymOfHead) add("HYPONYM_OF_HEAD");
  if (flags & kFlagExceptionKept) add("EXCEPTION_KEPT");
  return out;
}

std::string render_candidates(const std::vector<TermCandidate>& candidates) {
  std::string out;
  for (const auto& c : candidates) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", c.head, c.modifier, c.pair_count, c.noun_total,
                       format_flags(c.flags));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diachronic series

Period parse_period(std::string_view text) {
  if (text == "month") return Period::Month;
  if (text == "year") return Period::Year;
  throw std::invalid_argument(fmt::format("unknown period '{}' (expected month or year)", text));
}

std::uint64_t DiachronicSeries::total() const {
  std::uint64_t sum = 0;
  for (const auto& b : buckets) sum += b.count;
  return sum;
}

DiachronicCounter::DiachronicCounter(std::string_view head, std::string_view modifier,
                                     PairMode mode)
    : head_(to_lower_utf8(head)),
      modifier_(to_lower_utf8(modifier)),
      modifier_tag_(mode == PairMode::NounAdj ? PosTag::Adj : PosTag::Noun) {}

void DiachronicCounter::consume(const SentenceView& sentence) {
  if (!sentence.document.date) return;
  auto& count = by_day_[std::chrono::sys_days{*sentence.document.date}];
  const auto tokens = sentence.tokens;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].pos == PosTag::Noun && tokens[i].lemma == head_ &&
        tokens[i + 1].pos == modifier_tag_ && tokens[i + 1].lemma == modifier_) {
      ++count;
    }
  }
}

DiachronicSeries DiachronicCounter::finish(Period period) const {
  using namespace std::chrono;
  if (by_day_.empty()) throw std::invalid_argument("no dated documents to build a series from");

  auto period_start = [&](sys_days day) {
    const year_month_day ymd{day};
    return period == Period::Month ? year_month_day{ymd.year() / ymd.month() / 1}
                                   : year_month_day{ymd.year() / January / 1};
  };
  auto next_start = [&](const year_month_day& start) {
    return period == Period::Month ? year_month_day{start + months{1}}
                                   : year_month_day{start + years{1}};
  };

  DiachronicSeries series{head_, modifier_, period, {}};
  const auto last = period_start(by_day_.rbegin()->first);
  auto day_it = by_day_.begin();
  for (auto start = period_start(by_day_.begin()->first);; start = next_start(start)) {
    const auto end = next_start(start);
    SeriesBucket bucket{start, static_cast<unsigned>((sys_days{end} - sys_days{start}).count()), 0};
    for (; day_it != by_day_.end() && day_it->first < sys_days{end}; ++day_it) {
      bucket.count += day_it->second;
    }
    series.buckets.push_back(bucket);
    if (start == last) break;
  }
  return series;
}

DiachronicSeries diachronic_series(const std::vector<ShardPtr>& shards, std::string_view head,
                                   std::string_view modifier, Period period, PairMode mode) {
  DiachronicCounter counter(head, modifier, mode);
  for (const auto& shard : shards) {
    shard->for_each_sentence([&](const SentenceView& s) { counter.consume(s); });
  }
  return counter.finish(period);
}

std::string render_series(const DiachronicSeries& series) {
  std::string out;
  for (const auto& b : series.buckets) {
    out += fmt::format("{}\t{}\t{}\n", format_iso_date(b.start), b.length_days, b.count);
  }
  return out;
}

}  // namespace lingrid
