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
#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace lingrid {

struct HeadEntry {
  std::uint64_t noun_total = 0;  // every NOUN occurrence of the head, paired or not
  std::map<std::string, std::uint64_t, std::less<>> modifiers;

  friend bool operator==(const HeadEntry&, const HeadEntry&) = default;
};

/// Head lemma -> (total occurrences, modifier lemma -> count). The output of
/// an extraction job and the unit that gets merged.
class PairTable {
 public:
  using Entries = std::map<std::string, HeadEntry, std::less<>>;

  void add_noun(std::string_view head, std::uint64_t count = 1) {
    entry(head).noun_total += count;
  }

  void add_pair(std::string_view head, std::string_view modifier, std::uint64_t count = 1) {
    auto& mods = entry(head).modifiers;
    if (auto it = mods.find(modifier); it != mods.end()) {
      it->second += count;
    } else {
      mods.emplace(std::string(modifier), count);
    }
  }

  // Pointwise addition; the merge operation of the commutative monoid.
  PairTable& operator+=(const PairTable& other) {
    for (const auto& [head, e] : other.entries_) {
      auto& mine = entry(head);
      mine.noun_total += e.noun_total;
      for (const auto& [mod, count] : e.modifiers) {
        auto [it, inserted] = mine.modifiers.try_emplace(mod, 0);
        it->second += count;
      }
    }
    return *this;
  }

  const HeadEntry* find(std::string_view head) const {
    auto it = entries_.find(head);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::uint64_t pair_count(std::string_view head, std::string_view modifier) const {
    const auto* e = find(head);
    if (e == nullptr) return 0;
    auto it = e->modifiers.find(modifier);
    return it == e->modifiers.end() ? 0 : it->second;
  }

  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const PairTable&, const PairTable&) = default;

 private:
  HeadEntry& entry(std::string_view head) {
    if (auto it = entries_.find(head); it != entries_.end()) return it->second;
    return entries_.emplace(std::string(head), HeadEntry{}).first->second;
  }

  Entries entries_;
};

}  // namespace lingrid
