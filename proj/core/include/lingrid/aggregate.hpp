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
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lingrid/pair_table.hpp"

namespace lingrid {

// Pointwise sum. Associative and commutative; merge_tables({}) is empty.
PairTable merge_tables(std::span<const PairTable> parts);

// Same result as merge_tables, computed as a pairwise tree reduction on up to
// `workers` threads.
PairTable merge_tables_parallel(std::span<const PairTable> parts, std::size_t workers);

/// Frequency report, one line per head that has at least one modifier:
///
///   01670<TAB>[MUCCA]<TAB>MALATO 24, PAZZO 1593
///
/// Lines are ordered by noun_total descending, then head ascending; the
/// leading total is zero-padded to five digits. Modifiers are uppercased and
/// listed in ascending order.
std::string render_report(const PairTable& table, std::optional<std::size_t> top_k = std::nullopt);

// Inverse of render_report for paired heads. Lemmas come back lowercase.
// Throws std::invalid_argument on malformed lines.
PairTable parse_report(std::string_view text);

}  // namespace lingrid
