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

#include "lingrid/aggregate.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "lingrid/corpus.hpp"

namespace lingrid {

PairTable merge_tables(std::span<const PairTable> parts) {
  PairTable out;
  for (const auto& part : parts) out += part;
  return out;
}

PairTable merge_tables_parallel(std::span<const PairTable> parts, std::size_t workers) {
  if (parts.size() <= 1 || workers <= 1) return merge_tables(parts);
  std::vector<PairTable> level(parts.begin(), parts.end());
  while (level.size() > 1) {
    std::vector<PairTable> next((level.size() + 1) / 2);
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < next.size(); ++i) {
      auto task = [&, i] {
        next[i] = std::move(level[2 * i]);
        if (2 * i + 1 < level.size()) next[i] += level[2 * i + 1];
      };
      if (pending.size() + 1 < workers) {
        pending.push_back(std::async(std::launch::async, task));
      } else {
        task();
      }
    }
    for (auto& f : pending) f.get();
    level = std::move(next);
  }
  return std::move(level.front());
}

std::string render_report(const PairTable& table, std::optional<std::size_t> top_k) {
  std::vector<std::pair<const std::string*, const HeadEntry*>> rows;
  for (const auto& [head, entry] : table.entries()) {
    if (!entry.modifiers.empty()) rows.emplace_back(&head, &entry);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second->noun_total != b.second->noun_total) {
      return a.second->noun_total > b.second->noun_total;
    }
    return *a.first < *b.first;
  });
  if (top_k && rows.size() > *top_k) rows.resize(*top_k);

  std::string out;
  std::vector<std::pair<std::string, std::uint64_t>> mods;
  for (const auto& [head, entry] : rows) {
    mods.clear();
    for (const auto& [mod, count] : entry->modifiers) mods.emplace_back(to_upper_utf8(mod), count);
    std::sort(mods.begin(), mods.end());
    out += fmt::format("{:05d}\t[{}]\t", entry->noun_total, to_upper_utf8(*head));
    for (std::size_t i = 0; i < mods.size(); ++i) {
      if (i != 0) out += ", ";
      out += fmt::format("{} {}", mods[i].first, mods[i].second);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::uint64_t parse_count(std::string_view text, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("report line {}: bad number '{}'", line_no, text));
  }
  return value;
}

}  // namespace

PairTable parse_report(std::string_view text) {
  PairTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("report line {}: expected 3 fields", line_no));
    }
    const auto total = parse_count(line.substr(0, tab1), line_no);
    const auto bracketed = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (bracketed.size() < 3 || bracketed.front() != '[' || bracketed.back() != ']') {
      throw std::invalid_argument(fmt::format("report line {}: head must be [BRACKETED]", line_no));
    }
    const auto head = to_lower_utf8(bracketed.substr(1, bracketed.size() - 2));
    table.add_noun(head, total);

    auto pairs = line.substr(tab2 + 1);
    while (!pairs.empty()) {
      const auto sep = pairs.find(", ");
      const auto item = pairs.substr(0, sep);
      const auto space = item.rfind(' ');
      if (space == std::string_view::npos || space == 0) {
        throw std::invalid_argument(fmt::format("report line {}: bad pair '{}'", line_no, item));
      }
      table.add_pair(head, to_lower_utf8(item.substr(0, space)),
                     parse_count(item.substr(space + 1), line_no));
      pairs = sep == std::string_view::npos ? std::string_view{} : pairs.substr(sep + 2);
    }
  }
  return table;
}

}  // namespace lingrid
