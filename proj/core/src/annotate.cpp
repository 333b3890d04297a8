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

namespace lingrid {

namespace {

bool is_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

bool is_punct(unsigned char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

bool ends_sentence(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

}  // namespace

Document annotate_toy(std::string_view raw_text, const Lexicon& lexicon, std::string id,
                      std::string domain) {
  Document doc;
  doc.id = std::move(id);
  doc.domain = std::move(domain);

  Sentence sentence;
  auto emit = [&](std::string_view surface) {
    Token token;
    token.surface = std::string(surface);
    const auto key = to_lower_utf8(surface);
    if (auto it = lexicon.find(key); it != lexicon.end()) {
      token.lemma = to_lower_utf8(it->second.first);
      token.pos = it->second.second;
    } else {
      token.lemma = key;
      token.pos = surface.size() == 1 && is_punct(static_cast<unsigned char>(surface[0]))
                      ? PosTag::Punct
                      : PosTag::Other;
    }
    sentence.tokens.push_back(std::move(token));
    if (ends_sentence(surface)) {
      doc.sentences.push_back(std::move(sentence));
      sentence = Sentence{};
    }
  };

  std::size_t word_start = std::string_view::npos;
  for (std::size_t i = 0; i <= raw_text.size(); ++i) {
    const bool at_end = i == raw_text.size();
    const auto c = at_end ? static_cast<unsigned char>(' ') : static_cast<unsigned char>(raw_text[i]);
    if (is_space(c) || is_punct(c)) {
      if (word_start != std::string_view::npos) {
        emit(raw_text.substr(word_start, i - word_start));
        word_start = std::string_view::npos;
      }
      if (!at_end && is_punct(c)) emit(raw_text.substr(i, 1));
    } else if (word_start == std::string_view::npos) {
      word_start = i;
    }
  }
  if (!sentence.tokens.empty()) doc.sentences.push_back(std::move(sentence));
  return doc;
}

}  // namespace lingrid
