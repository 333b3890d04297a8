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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lingrid {

// Coarse tagset. NOUN and ADJ drive term extraction; the rest exist so that
// fixtures look like running text.
enum class PosTag : std::uint8_t { Noun, Adj, Verb, Det, Adp, Punct, Other };

std::string_view to_string(PosTag tag);

// Throws std::invalid_argument for anything outside the closed tagset.
PosTag parse_pos(std::string_view text);

struct Token {
  std::string surface;
  std::string lemma;  // always lowercase
  PosTag pos = PosTag::Other;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

using Date = std::chrono::year_month_day;

std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

struct Document {
  std::string id;
  std::string domain;
  std::optional<Date> date;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// One sentence as delivered to a streaming consumer, together with the
/// document it belongs to and its position there.
struct SentenceView {
  const Document& document;
  std::size_t sentence_index;
  std::size_t document_offset;  // index of the first token within the document
  std::span<const Token> tokens;
};

using SentenceVisitor = std::function<void(const SentenceView&)>;

/// An immutable, domain-labeled slice of a corpus. The unit of distribution
/// and replication.
class Shard {
 public:
  Shard(std::string shard_id, std::string domain, std::vector<Document> documents);

  const std::string& id() const { return id_; }
  const std::string& domain() const { return domain_; }
  const std::vector<Document>& documents() const { return documents_; }
  std::uint64_t token_count() const { return token_count_; }
  std::uint64_t byte_size() const { return byte_size_; }

  // Direct traversal. Grid jobs go through gridsim::ReadOnceHandle instead.
  void for_each_sentence(const SentenceVisitor& visit) const;

 private:
  std::string id_;
  std::string domain_;
  std::vector<Document> documents_;
  std::uint64_t token_count_ = 0;
  std::uint64_t byte_size_ = 0;
};

using ShardPtr = std::shared_ptr<const Shard>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Vertical format: `#doc <id> <domain> [<date>]` headers, one
// `surface<TAB>lemma<TAB>POS` line per token, a blank line after each
// sentence.
std::vector<Document> parse_vertical(std::istream& in);
std::vector<Document> parse_vertical(std::string_view text);
std::string write_vertical(std::span<const Document> docs);
void write_vertical(std::ostream& out, std::span<const Document> docs);

// Size in bytes of write_vertical(docs), computed without serializing.
std::uint64_t vertical_size(std::span<const Document> docs);

/// Greedy balancing by token count: each document goes to the currently
/// lightest shard (lowest index on ties). Documents are never split, empty
/// shards are dropped, and the survivors are named `<prefix>-<k>`.
std::vector<Shard> shard_corpus(std::span<const Document> docs, std::size_t target_shards,
                                std::string_view prefix = "shard");

/// Groups documents by domain (first-appearance order) and shards each group
/// separately, giving ids `<domain>-<k>`.
std::vector<Shard> shard_by_domain(std::span<const Document> docs, std::size_t shards_per_domain);

// Shard manifest: `<shard_id><TAB><domain><TAB><token_count><TAB><path>`.
struct ManifestEntry {
  std::string shard_id;
  std::string domain;
  std::uint64_t token_count = 0;
  std::string path;
};

std::vector<ManifestEntry> parse_manifest(std::istream& in);
std::string write_manifest(std::span<const ManifestEntry> entries);

// Loads every shard named by a manifest file; relative paths resolve against
// the manifest's directory. Token counts are recomputed and checked.
std::vector<ShardPtr> load_manifest(const std::string& manifest_path);

// Toy annotator used to build fixtures. Not a tagger.
using Lexicon = std::map<std::string, std::pair<std::string, PosTag>, std::less<>>;

Document annotate_toy(std::string_view raw_text, const Lexicon& lexicon, std::string id = "doc",
                      std::string domain = "none");

// ASCII lowercasing plus the Latin-1 supplement block in UTF-8.
std::string to_lower_utf8(std::string_view text);
std::string to_upper_utf8(std::string_view text);

}  // namespace lingrid
