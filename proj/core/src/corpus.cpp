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

#include "lingrid/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

namespace lingrid {

namespace {

constexpr std::string_view kDocHeader = "#doc";

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Adj: return "ADJ";
    case PosTag::Verb: return "VERB";
    case PosTag::Det: return "DET";
    case PosTag::Adp: return "ADP";
    case PosTag::Punct: return "PUNCT";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

PosTag parse_pos(std::string_view text) {
  static constexpr std::pair<std::string_view, PosTag> kTags[] = {
      {"NOUN", PosTag::Noun}, {"ADJ", PosTag::Adj},     {"VERB", PosTag::Verb},
      {"DET", PosTag::Det},   {"ADP", PosTag::Adp},     {"PUNCT", PosTag::Punct},
      {"OTHER", PosTag::Other}};
  for (const auto& [name, tag] : kTags) {
    if (name == text) return tag;
  }
  throw std::invalid_argument(fmt::format("unknown POS tag '{}'", text));
}

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto number = [&](std::size_t pos, std::size_t len) -> std::optional<unsigned> {
    unsigned value = 0;
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len) return std::nullopt;
    return value;
  };
  const auto y = number(0, 4);
  const auto m = number(5, 2);
  const auto d = number(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const Date date{std::chrono::year{static_cast<int>(*y)}, std::chrono::month{*m},
                  std::chrono::day{*d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

std::size_t Document::token_count() const {
  return std::accumulate(sentences.begin(), sentences.end(), std::size_t{0},
                         [](std::size_t acc, const Sentence& s) { return acc + s.tokens.size(); });
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)), line_(line) {}

// ---------------------------------------------------------------------------
// Vertical format

std::vector<Document> parse_vertical(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen_ids;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;

  auto close_sentence = [&] {
    if (!current.tokens.empty()) {
      docs.back().sentences.push_back(std::move(current));
      current = Sentence{};
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      if (!docs.empty()) close_sentence();
      continue;
    }
    const std::string_view view{line};
    if (view.substr(0, kDocHeader.size()) == kDocHeader &&
        (view.size() == kDocHeader.size() || view[kDocHeader.size()] == ' ')) {
      if (!docs.empty()) close_sentence();
      const auto fields = split(view, ' ');
      if (fields.size() < 3 || fields.size() > 4) {
        throw ParseError(line_no, "document header needs `#doc <id> <domain> [<date>]`");
      }
      Document doc;
      doc.id = std::string(fields[1]);
      doc.domain = std::string(fields[2]);
      if (doc.id.empty() || doc.domain.empty()) {
        throw ParseError(line_no, "empty document id or domain");
      }
      if (fields.size() == 4) {
        doc.date = parse_iso_date(fields[3]);
        if (!doc.date) throw ParseError(line_no, fmt::format("bad date '{}'", fields[3]));
      }
      if (!seen_ids.insert(doc.id).second) {
        throw ParseError(line_no, fmt::format("duplicate document id '{}'", doc.id));
      }
      docs.push_back(std::move(doc));
      continue;
    }

    const auto fields = split(view, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, fmt::format("expected 3 tab-separated fields, got {}", fields.size()));
    }
    if (docs.empty()) throw ParseError(line_no, "token line before first #doc header");
    if (fields[0].empty()) throw ParseError(line_no, "empty surface form");
    if (fields[1].empty()) throw ParseError(line_no, "empty lemma");
    Token token;
    token.surface = std::string(fields[0]);
    token.lemma = to_lower_utf8(fields[1]);
    try {
      token.pos = parse_pos(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    current.tokens.push_back(std::move(token));
  }
  if (!docs.empty()) close_sentence();
  return docs;
}

std::vector<Document> parse_vertical(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_vertical(in);
}

void write_vertical(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    out << kDocHeader << ' ' << doc.id << ' ' << doc.domain;
    if (doc.date) out << ' ' << format_iso_date(*doc.date);
    out << '\n';
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) {
        out << token.surface << '\t' << token.lemma << '\t' << to_string(token.pos) << '\n';
      }
      out << '\n';
    }
  }
}

std::string write_vertical(std::span<const Document> docs) {
  std::ostringstream out;
  write_vertical(out, docs);
  return std::move(out).str();
}

std::uint64_t vertical_size(std::span<const Document> docs) {
  std::uint64_t total = 0;
  for (const auto& doc : docs) {
    total += kDocHeader.size() + 1 + doc.id.size() + 1 + doc.domain.size() + 1;
    if (doc.date) total += 11;
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) {
        total += token.surface.size() + token.lemma.size() + to_string(token.pos).size() + 3;
      }
      total += 1;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Shards

Shard::Shard(std::string shard_id, std::string domain, std::vector<Document> documents)
    : id_(std::move(shard_id)), domain_(std::move(domain)), documents_(std::move(documents)) {
  for (const auto& doc : documents_) token_count_ += doc.token_count();
  byte_size_ = vertical_size(documents_);
}

void Shard::for_each_sentence(const SentenceVisitor& visit) const {
  for (const auto& doc : documents_) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      const auto& tokens = doc.sentences[i].tokens;
      visit(SentenceView{doc, i, offset, tokens});
      offset += tokens.size();
    }
  }
}

std::vector<Shard> shard_corpus(std::span<const Document> docs, std::size_t target_shards,
                                std::string_view prefix) {
  if (target_shards == 0) throw std::invalid_argument("target shard count must be at least 1");

  std::vector<std::vector<Document>> bins(target_shards);
  std::vector<std::uint64_t> load(target_shards, 0);
  for (const auto& doc : docs) {
    // min_element returns the first minimum, i.e. the lowest index on ties.
    const auto lightest = static_cast<std::size_t>(
        std::distance(load.begin(), std::min_element(load.begin(), load.end())));
    bins[lightest].push_back(doc);
    load[lightest] += doc.token_count();
  }

  std::vector<Shard> shards;
  for (auto& bin : bins) {
    if (bin.empty()) continue;
    std::string domain = bin.front().domain;
    const bool mixed = std::any_of(bin.begin(), bin.end(),
                                   [&](const Document& d) { return d.domain != domain; });
    if (mixed) domain = "mixed";
    shards.emplace_back(fmt::format("{}-{}", prefix, shards.size()), std::move(domain),
                        std::move(bin));
  }
  return shards;
}

std::vector<Shard> shard_by_domain(std::span<const Document> docs, std::size_t shards_per_domain) {
  if (shards_per_domain == 0) throw std::invalid_argument("shards per domain must be at least 1");
  std::vector<std::string> order;
  std::map<std::string, std::vector<Document>, std::less<>> groups;
  for (const auto& doc : docs) {
    auto [it, inserted] = groups.try_emplace(doc.domain);
    if (inserted) order.push_back(doc.domain);
    it->second.push_back(doc);
  }
  std::vector<Shard> shards;
  for (const auto& domain : order) {
    auto part = shard_corpus(groups.at(domain), shards_per_domain, domain);
    std::move(part.begin(), part.end(), std::back_inserter(shards));
  }
  return shards;
}

// ---------------------------------------------------------------------------
// Manifest

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "manifest line needs 4 tab-separated fields");
    ManifestEntry entry{std::string(fields[0]), std::string(fields[1]), 0, std::string(fields[3])};
    const auto [ptr, ec] =
        std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), entry.token_count);
    if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size()) {
      throw ParseError(line_no, fmt::format("bad token count '{}'", fields[2]));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string write_manifest(std::span<const ManifestEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    out += fmt::format("{}\t{}\t{}\t{}\n", e.shard_id, e.domain, e.token_count, e.path);
  }
  return out;
}

std::vector<ShardPtr> load_manifest(const std::string& manifest_path) {
  namespace fs = std::filesystem;
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error(fmt::format("cannot open manifest '{}'", manifest_path));
  const auto entries = parse_manifest(in);
  const fs::path base = fs::path(manifest_path).parent_path();

  std::vector<ShardPtr> shards;
  std::set<std::string> ids;
  for (const auto& entry : entries) {
    if (!ids.insert(entry.shard_id).second) {
      throw std::runtime_error(fmt::format("duplicate shard id '{}' in manifest", entry.shard_id));
    }
    fs::path path{entry.path};
    if (path.is_relative()) path = base / path;
    std::ifstream shard_in(path);
    if (!shard_in) throw std::runtime_error(fmt::format("cannot open shard '{}'", path.string()));
    std::vector<Document> docs;
    try {
      docs = parse_vertical(shard_in);
    } catch (const ParseError& e) {
      throw std::runtime_error(fmt::format("{}:{}", path.string(), e.what()));
    }
    auto shard = std::make_shared<const Shard>(entry.shard_id, entry.domain, std::move(docs));
    if (shard->token_count() != entry.token_count) {
      throw std::runtime_error(fmt::format("shard '{}': manifest says {} tokens, file has {}",
                                           entry.shard_id, entry.token_count,
                                           shard->token_count()));
    }
    shards.push_back(std::move(shard));
  }
  return shards;
}

// ---------------------------------------------------------------------------
// Case mapping

std::string to_lower_utf8(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) out[i + 1] = static_cast<char>(next + 0x20);
      ++i;
    }
  }
  return out;
}

std::string to_upper_utf8(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'a' && c <= 'z') {
      out[i] = static_cast<char>(c - 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0xA0 && next <= 0xBE && next != 0xB7) out[i + 1] = static_cast<char>(next - 0x20);
      ++i;
    }
  }
  return out;
}

}  // namespace lingrid
