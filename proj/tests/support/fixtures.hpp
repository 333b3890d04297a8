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
#include <utility>
#include <vector>

#include "lingrid/pair_table.hpp"

namespace lingrid::testing {

// Two report rows from a medical newspaper corpus, with their expected
// rendering.
inline PairTable malattia_table() {
  static const std::pair<const char*, std::uint64_t> kMods[] = {
      {"acuto", 23},        {"allergico", 26},       {"arterosclerotico", 82}, {"cardiaco", 118},
      {"cardiovascolare", 778}, {"causato", 28},     {"celiaco", 15},          {"collegato", 12},
      {"conclamato", 18},   {"congenito", 27},       {"contagioso", 17},       {"coronarico", 306},
      {"cronico", 170},     {"curabile", 15},        {"cutaneo", 15},          {"degenerativo", 145},
      {"diverso", 13},      {"dovuto", 17},          {"endemico", 11},         {"endocrino", 23},
      {"ereditario", 132},  {"esantematico", 143},   {"genetico", 360},        {"grave", 87},
      {"incurabile", 20},   {"infettivo", 613}};
  PairTable t;
  t.add_noun("malattia", 4839);
  for (const auto& [mod, count] : kMods) t.add_pair("malattia", mod, count);
  return t;
}

inline const std::string kMalattiaLine =
    "04839\t[MALATTIA]\tACUTO 23, ALLERGICO 26, ARTEROSCLEROTICO 82, CARDIACO 118, "
    "CARDIOVASCOLARE 778, CAUSATO 28, CELIACO 15, COLLEGATO 12, CONCLAMATO 18, CONGENITO 27, "
    "CONTAGIOSO 17, CORONARICO 306, CRONICO 170, CURABILE 15, CUTANEO 15, DEGENERATIVO 145, "
    "DIVERSO 13, DOVUTO 17, ENDEMICO 11, ENDOCRINO 23, EREDITARIO 132, ESANTEMATICO 143, "
    "GENETICO 360, GRAVE 87, INCURABILE 20, INFETTIVO 613\n";

inline PairTable mucca_table() {
  PairTable t;
  t.add_noun("mucca", 1670);
  t.add_pair("mucca", "malato", 24);
  t.add_pair("mucca", "pazzo", 1593);
  return t;
}

inline const std::string kMuccaLine = "01670\t[MUCCA]\tMALATO 24, PAZZO 1593\n";

// Ten heads, threshold 5, exception floor 2. Hand-classified:
//   kept by threshold: h1 (10), h6 (5), h9 (6; also single-modifier)
//   kept by exception: h2 {a:3}, h5 {a:2}, h8 {a:4}
//   dropped: h3 (two mods), h4 {a:1}, h7 (no mods), h10 (two mods)
inline PairTable ten_head_fixture() {
  PairTable t;
  auto head = [&](const char* h, std::uint64_t total, std::vector<std::pair<const char*, std::uint64_t>> mods) {
    t.add_noun(h, total);
    for (const auto& [m, c] : mods) t.add_pair(h, m, c);
  };
  head("h1", 10, {{"a", 4}, {"b", 2}});
  head("h2", 3, {{"a", 3}});
  head("h3", 3, {{"a", 1}, {"b", 2}});
  head("h4", 2, {{"a", 1}});
  head("h5", 4, {{"a", 2}});
  head("h6", 5, {{"a", 1}, {"b", 1}});
  head("h7", 1, {});
  head("h8", 4, {{"a", 4}});
  head("h9", 6, {{"a", 6}});
  head("h10", 2, {{"a", 1}, {"b", 1}});
  return t;
}

}  // namespace lingrid::testing
