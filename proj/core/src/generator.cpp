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

#include "lingrid/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace lingrid {

namespace {

// std::*_distribution output is implementation-defined, so sampling is done
// directly on the engine's (fully specified) output stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

class ZipfTable {
 public:
  ZipfTable(std::size_t n, double exponent) : cumulative_(n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cumulative_[i] = sum;
    }
    for (auto& c : cumulative_) c /= sum;
  }

  std::size_t sample(Rng& rng) const {
    const double u = rng.unit();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

constexpr std::string_view kOnsets[] = {"b", "c", "d", "f", "g", "l", "m", "n", "p",
                                        "r", "s", "t", "v", "ch", "gr", "pr", "st", "tr"};
constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u"};
constexpr std::string_view kDeterminers[] = {"il", "la", "lo", "le", "gli", "un", "una"};
constexpr std::string_view kAdpositions[] = {"di", "a", "da", "in", "con", "su", "per", "tra"};
constexpr std::string_view kFillers[] = {"eh", "ecco", "ok", "mah"};
constexpr std::string_view kPunct[] = {".", ".", ".", "!", "?"};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::string_view (&items)[N]) {
  return items[rng.below(N)];
}

// Pseudo-Italian word list, unique across every call through `taken`.
// `final_vowel`, when set, replaces the last vowel (adjectives end in -o).
std::vector<std::string> make_vocabulary(Rng& rng, std::size_t size, std::string_view ending,
                                         char final_vowel, std::set<std::string>& taken) {
  std::vector<std::string> words;
  std::size_t attempts = 0;
  while (words.size() < size) {
    std::string word;
    const auto syllables = 2 + rng.below(2 + attempts / 1000);
    for (std::uint64_t s = 0; s < syllables; ++s) {
      word += pick(rng, kOnsets);
      word += pick(rng, kVowels);
    }
    if (final_vowel != '\0') word.back() = final_vowel;
    word += ending;
    ++attempts;
    if (taken.insert(word).second) words.push_back(std::move(word));
  }
  return words;
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 32);
  return word;
}

struct Vocabulary {
  std::vector<std::string> nouns;
  std::vector<std::string> adjectives;
  std::vector<std::string> verbs;
};

class DocumentWriter {
 public:
  DocumentWriter(Rng& rng, const GeneratorSpec& spec, const Vocabulary& vocab,
                 const ZipfTable& noun_dist, const ZipfTable& adj_dist, GeneratedCorpus& out)
      : rng_(rng), spec_(spec), vocab_(vocab), noun_dist_(noun_dist), adj_dist_(adj_dist),
        out_(out) {}

  void write(Document& doc, std::vector<const PlantedPair*> planted) {
    doc_ = &doc;
    pending_ = std::move(planted);
    std::size_t emitted = 0;
    const std::size_t budget = spec_.tokens_per_document;
    constexpr std::size_t kMaxSentence = 12;

    while (!pending_.empty() || emitted + kMaxSentence <= budget) {
      sentence_ = Sentence{};
      noun_phrase();
      push(vocab_.verbs[rng_.below(vocab_.verbs.size())], "", PosTag::Verb);
      if (!pending_.empty() || rng_.chance(0.6)) {
        push(std::string(pick(rng_, kAdpositions)), "", PosTag::Adp);
        noun_phrase();
      }
      push(std::string(pick(rng_, kPunct)), "", PosTag::Punct);
      emitted += close_sentence();
    }
    if (emitted < budget) {
      sentence_ = Sentence{};
      for (std::size_t i = emitted + 1; i < budget; ++i) {
        push(std::string(pick(rng_, kFillers)), "", PosTag::Other);
      }
      push(".", "", PosTag::Punct);
      emitted += close_sentence();
    }
  }

 private:
  void push(std::string lemma, std::string surface, PosTag pos) {
    if (surface.empty()) surface = lemma;
    sentence_.tokens.push_back(Token{std::move(surface), std::move(lemma), pos});
  }

  std::string adjective_surface(const std::string& lemma) {
    if (lemma.size() > 1 && lemma.back() == 'o' && rng_.chance(0.5)) {
      return lemma.substr(0, lemma.size() - 1) + "a";
    }
    return lemma;
  }

  void noun_phrase() {
    push(std::string(pick(rng_, kDeterminers)), "", PosTag::Det);
    if (!pending_.empty()) {
      const PlantedPair& p = *pending_.back();
      pending_.pop_back();
      push(p.head, "", PosTag::Noun);
      out_.noun_adj.add_noun(p.head);
      out_.noun_noun.add_noun(p.head);
      if (p.modifier_pos == PosTag::Noun) {
        push(p.modifier, "", PosTag::Noun);
        out_.noun_adj.add_noun(p.modifier);
        out_.noun_noun.add_noun(p.modifier);
        out_.noun_noun.add_pair(p.head, p.modifier);
      } else {
        push(p.modifier, adjective_surface(p.modifier), p.modifier_pos);
        if (p.modifier_pos == PosTag::Adj) out_.noun_adj.add_pair(p.head, p.modifier);
      }
      out_.planted.push_back(PlantedOccurrence{p.head, p.modifier, doc_->id, doc_->date});
      return;
    }

    if (!vocab_.adjectives.empty() && rng_.chance(spec_.pre_adjective_rate)) {
      const auto& adj = vocab_.adjectives[adj_dist_.sample(rng_)];
      push(adj, adjective_surface(adj), PosTag::Adj);
    }
    const auto& noun = vocab_.nouns[noun_dist_.sample(rng_)];
    push(noun, "", PosTag::Noun);
    out_.noun_adj.add_noun(noun);
    out_.noun_noun.add_noun(noun);

    const double u = rng_.unit();
    if (!vocab_.adjectives.empty() && u < spec_.post_adjective_rate) {
      const auto& adj = vocab_.adjectives[adj_dist_.sample(rng_)];
      push(adj, adjective_surface(adj), PosTag::Adj);
      out_.noun_adj.add_pair(noun, adj);
    } else if (u < spec_.post_adjective_rate + spec_.noun_noun_rate) {
      const auto& second = vocab_.nouns[noun_dist_.sample(rng_)];
      push(second, "", PosTag::Noun);
      out_.noun_adj.add_noun(second);
      out_.noun_noun.add_noun(second);
      out_.noun_noun.add_pair(noun, second);
    }
  }

  std::size_t close_sentence() {
    auto& first = sentence_.tokens.front();
    first.surface = capitalize(first.surface);
    const auto n = sentence_.tokens.size();
    doc_->sentences.push_back(std::move(sentence_));
    return n;
  }

  Rng& rng_;
  const GeneratorSpec& spec_;
  const Vocabulary& vocab_;
  const ZipfTable& noun_dist_;
  const ZipfTable& adj_dist_;
  GeneratedCorpus& out_;
  Document* doc_ = nullptr;
  Sentence sentence_;
  std::vector<const PlantedPair*> pending_;
};

}  // namespace

GeneratedCorpus generate_corpus(std::uint64_t seed, const GeneratorSpec& spec) {
  Rng rng(seed);
  GeneratedCorpus out;

  std::set<std::string> taken(kFillers, kFillers + std::size(kFillers));
  taken.insert(std::begin(kDeterminers), std::end(kDeterminers));
  taken.insert(std::begin(kAdpositions), std::end(kAdpositions));
  for (const auto& p : spec.planted) {
    taken.insert(p.head);
    taken.insert(p.modifier);
  }
  Vocabulary vocab;
  vocab.nouns =
      make_vocabulary(rng, std::max<std::size_t>(spec.noun_vocabulary, 1), "", '\0', taken);
  vocab.adjectives = make_vocabulary(rng, spec.adj_vocabulary, "", 'o', taken);
  vocab.verbs =
      make_vocabulary(rng, std::max<std::size_t>(spec.verb_vocabulary, 1), "re", '\0', taken);

  const ZipfTable noun_dist(vocab.nouns.size(), spec.zipf_exponent);
  const ZipfTable adj_dist(std::max<std::size_t>(vocab.adjectives.size(), 1), spec.zipf_exponent);

  // Document skeletons: ids, domains, dates.
  std::vector<std::string> domains = spec.domains;
  if (domains.empty()) domains.push_back("none");
  out.documents.resize(spec.documents);
  std::int64_t span_days = -1;
  if (spec.first_date && spec.last_date) {
    span_days = (std::chrono::sys_days{*spec.last_date} - std::chrono::sys_days{*spec.first_date})
                    .count();
    if (span_days < 0) throw std::invalid_argument("last_date precedes first_date");
  }
  for (std::size_t i = 0; i < spec.documents; ++i) {
    auto& doc = out.documents[i];
    doc.id = fmt::format("d{:05d}", i);
    doc.domain = domains[i % domains.size()];
    if (span_days >= 0 && !rng.chance(spec.undated_rate)) {
      const auto offset = static_cast<int>(rng.below(static_cast<std::uint64_t>(span_days) + 1));
      doc.date = Date{std::chrono::sys_days{*spec.first_date} + std::chrono::days{offset}};
    }
  }

  // Every burst month inside the date range gets at least one document,
  // taken from those whose month is not itself a burst month.
  std::vector<std::chrono::year_month> bursts;
  for (const auto& p : spec.planted) {
    if (p.count > 0 && p.burst && std::find(bursts.begin(), bursts.end(), *p.burst) == bursts.end()) {
      bursts.push_back(*p.burst);
    }
  }
  auto month_of = [](const std::optional<Date>& d) -> std::optional<std::chrono::year_month> {
    if (!d) return std::nullopt;
    return d->year() / d->month();
  };
  for (const auto& month : bursts) {
    const bool covered = std::any_of(out.documents.begin(), out.documents.end(),
                                     [&](const Document& d) { return month_of(d.date) == month; });
    if (covered || span_days < 0) continue;
    const Date month_first{month / std::chrono::day{1}};
    const Date month_last{month / std::chrono::last};
    if (std::chrono::sys_days{month_last} < std::chrono::sys_days{*spec.first_date} ||
        std::chrono::sys_days{month_first} > std::chrono::sys_days{*spec.last_date}) {
      continue;
    }
    std::vector<std::size_t> movable;
    for (std::size_t i = 0; i < out.documents.size(); ++i) {
      const auto m = month_of(out.documents[i].date);
      if (!m || std::find(bursts.begin(), bursts.end(), *m) == bursts.end()) movable.push_back(i);
    }
    if (movable.empty()) continue;
    out.documents[movable[rng.below(movable.size())]].date =
        std::max(month_first, *spec.first_date);
  }

  // Assign planted occurrences to documents.
  std::vector<std::vector<const PlantedPair*>> assigned(spec.documents);
  for (const auto& p : spec.planted) {
    if (p.count == 0) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < spec.documents; ++i) {
      const auto& date = out.documents[i].date;
      if (!p.burst || (date && date->year() / date->month() == *p.burst)) candidates.push_back(i);
    }
    if (candidates.empty()) {
      throw std::invalid_argument(
          fmt::format("no document can receive planted pair ({}, {})", p.head, p.modifier));
    }
    for (std::uint64_t k = 0; k < p.count; ++k) {
      assigned[candidates[rng.below(candidates.size())]].push_back(&p);
    }
  }

  DocumentWriter writer(rng, spec, vocab, noun_dist, adj_dist, out);
  for (std::size_t i = 0; i < spec.documents; ++i) {
    writer.write(out.documents[i], std::move(assigned[i]));
  }
  return out;
}

}  // namespace lingrid
