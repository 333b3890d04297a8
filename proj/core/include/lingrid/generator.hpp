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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lingrid/corpus.hpp"
#include "lingrid/pair_table.hpp"

namespace lingrid {

/// A pair the generator must emit exactly `count` times. With `burst` set,
/// every occurrence lands in documents dated in that month; if the random
/// dates miss that month, one document is moved into it.
struct PlantedPair {
  std::string head;
  std::string modifier;
  std::uint64_t count = 0;
  PosTag modifier_pos = PosTag::Adj;
  std::optional<std::chrono::year_month> burst;
};

struct GeneratorSpec {
  std::size_t documents = 8;
  // Each document has exactly this many tokens unless its planted pairs need
  // more room.
  std::size_t tokens_per_document = 500;
  std::vector<std::string> domains = {"medicine", "agriculture", "history", "environment"};

  std::size_t noun_vocabulary = 200;
  std::size_t adj_vocabulary = 80;
  std::size_t verb_vocabulary = 40;
  double zipf_exponent = 1.0;

  double post_adjective_rate = 0.35;  // background NP takes a following ADJ
  double pre_adjective_rate = 0.10;   // background NP takes a preceding ADJ
  double noun_noun_rate = 0.10;       // background NP takes a second NOUN

  std::optional<Date> first_date;
  std::optional<Date> last_date;
  double undated_rate = 0.0;

  std::vector<PlantedPair> planted;
};

struct PlantedOccurrence {
  std::string head;
  std::string modifier;
  std::string document_id;
  std::optional<Date> date;
};

/// Output of generate_corpus together with the ground truth recorded while
/// emitting it: the NOUN-ADJ and NOUN-NOUN tables and where each planted pair
/// went.
struct GeneratedCorpus {
  std::vector<Document> documents;
  PairTable noun_adj;
  PairTable noun_noun;
  std::vector<PlantedOccurrence> planted;
};

// Pure function of (seed, spec). Throws std::invalid_argument when a burst
// month lies outside [first_date, last_date] or no dates are configured.
GeneratedCorpus generate_corpus(std::uint64_t seed, const GeneratorSpec& spec);

}  // namespace lingrid
