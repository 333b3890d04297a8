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

#include <charconv>

#include <fmt/format.h>

#include "lingrid/patterns.hpp"

namespace lingrid {

namespace {

struct Lexeme {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Lexeme> lex(std::string_view text) {
  if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    const auto start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
    if (i > start) out.push_back({text.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<unsigned> parse_bound(std::string_view digits) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return value;
}

PatternElement parse_element(const Lexeme& lx) {
  const auto text = lx.text;
  if (text.substr(0, 3) == "GAP") {
    const auto comma = text.find(',');
    if (text.size() < 7 || text[3] != '{' || text.back() != '}' || comma == std::string_view::npos) {
      throw PatternError(lx.column, fmt::format("malformed gap '{}', expected GAP{{min,max}}", text));
    }
    const auto lo = parse_bound(text.substr(4, comma - 4));
    const auto hi = parse_bound(text.substr(comma + 1, text.size() - comma - 2));
    if (!lo || !hi) throw PatternError(lx.column, fmt::format("malformed gap bounds in '{}'", text));
    if (*lo > *hi || *hi > kMaxGap) {
      throw PatternError(lx.column,
                         fmt::format("gap bounds must satisfy 0 <= min <= max <= {}", kMaxGap));
    }
    return Gap{*lo, *hi};
  }

  TokenConstraint c;
  const auto colon = text.find(':');
  const auto pos_text = text.substr(0, colon);
  if (colon != std::string_view::npos) {
    const auto lemma = text.substr(colon + 1);
    if (lemma.empty()) throw PatternError(lx.column + colon + 1, "empty lemma after ':'");
    c.lemma = to_lower_utf8(lemma);
  }
  if (pos_text == "*") {
    if (!c.lemma) throw PatternError(lx.column, "bare wildcard is only allowed inside a gap");
  } else {
    try {
      c.pos = parse_pos(pos_text);
    } catch (const std::invalid_argument&) {
      throw PatternError(lx.column, fmt::format("unknown POS tag '{}'", pos_text));
    }
  }
  return c;
}

}  // namespace

PatternError::PatternError(std::size_t column, const std::string& message)
    : std::runtime_error(fmt::format("column {}: {}", column, message)), column_(column) {}

std::size_t PatternRule::constraint_count() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += std::holds_alternative<TokenConstraint>(e) ? 1 : 0;
  return n;
}

PatternRule parse_pattern(std::string_view text, std::string name) {
  const auto lexemes = lex(text);
  if (lexemes.empty()) throw PatternError(1, "empty pattern");

  PatternRule rule;
  for (const auto& lx : lexemes) rule.elements.push_back(parse_element(lx));
  if (std::holds_alternative<Gap>(rule.elements.front())) {
    throw PatternError(lexemes.front().column, "pattern may not start with a gap");
  }
  if (std::holds_alternative<Gap>(rule.elements.back())) {
    throw PatternError(lexemes.back().column, "pattern may not end with a gap");
  }
  rule.name = name.empty() ? print_pattern(rule) : std::move(name);
  return rule;
}

std::string print_pattern(const PatternRule& rule) {
  std::string out;
  for (const auto& element : rule.elements) {
    if (!out.empty()) out += ' ';
    if (const auto* gap = std::get_if<Gap>(&element)) {
      out += fmt::format("GAP{{{},{}}}", gap->min, gap->max);
      continue;
    }
    const auto& c = std::get<TokenConstraint>(element);
    out += c.pos ? std::string(to_string(*c.pos)) : std::string("*");
    if (c.lemma) out += ":" + *c.lemma;
  }
  return out;
}

std::vector<PatternRule> parse_pattern_file(std::string_view text) {
  std::vector<PatternRule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    ++line_no;
    if (!lex(line).empty()) {
      try {
        rules.push_back(parse_pattern(line, fmt::format("line{}", line_no)));
      } catch (const PatternError& e) {
        throw PatternError(e.column(), fmt::format("line {}: {}", line_no, e.what()));
      }
    }
    start = end + 1;
  }
  return rules;
}

}  // namespace lingrid
