// Copyright 2026 The TDPR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdpr/tokenizer.h"

#include <cctype>

namespace tdpr {
namespace {

bool IsAsciiPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

char AsciiLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

void EmitWord(std::string_view text, size_t begin, size_t end,
              std::vector<Token>& out) {
  size_t lo = begin;
  size_t hi = end;
  while (lo < hi && IsAsciiPunct(text[lo])) {
    out.push_back({std::string(1, text[lo]), lo, lo + 1});
    ++lo;
  }
  std::vector<Token> trailing;
  while (hi > lo && IsAsciiPunct(text[hi - 1])) {
    trailing.push_back({std::string(1, text[hi - 1]), hi - 1, hi});
    --hi;
  }
  if (lo < hi) {
    Token core{std::string(text.substr(lo, hi - lo)), lo, hi};
    for (char& c : core.text) c = AsciiLower(c);
    out.push_back(std::move(core));
  }
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

}  // namespace

size_t WhitespaceLengthAt(std::string_view text, size_t pos) {
  const auto byte = [&](size_t i) -> unsigned char {
    return i < text.size() ? static_cast<unsigned char>(text[i]) : 0;
  };
  const unsigned char c0 = byte(pos);
  switch (c0) {
    case ' ':
    case '\t':
    case '\n':
    case '\v':
    case '\f':
    case '\r':
      return 1;
    case 0xC2:  // U+0085, U+00A0
      return (byte(pos + 1) == 0x85 || byte(pos + 1) == 0xA0) ? 2 : 0;
    case 0xE1:  // U+1680
      return (byte(pos + 1) == 0x9A && byte(pos + 2) == 0x80) ? 3 : 0;
    case 0xE2: {
      const unsigned char c1 = byte(pos + 1);
      const unsigned char c2 = byte(pos + 2);
      if (c1 == 0x80 && ((c2 >= 0x80 && c2 <= 0x8A) || c2 == 0xA8 ||
                         c2 == 0xA9 || c2 == 0xAF)) {
        return 3;  // U+2000..U+200A, U+2028, U+2029, U+202F
      }
      if (c1 == 0x81 && c2 == 0x9F) return 3;  // U+205F
      return 0;
    }
    case 0xE3:  // U+3000
      return (byte(pos + 1) == 0x80 && byte(pos + 2) == 0x80) ? 3 : 0;
    default:
      return 0;
  }
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t pos = 0;
  size_t word_begin = std::string_view::npos;
  while (pos < text.size()) {
    const size_t ws = WhitespaceLengthAt(text, pos);
    if (ws > 0) {
      if (word_begin != std::string_view::npos) {
        EmitWord(text, word_begin, pos, tokens);
        word_begin = std::string_view::npos;
      }
      pos += ws;
    } else {
      if (word_begin == std::string_view::npos) word_begin = pos;
      ++pos;
    }
  }
  if (word_begin != std::string_view::npos) {
    EmitWord(text, word_begin, text.size(), tokens);
  }
  return tokens;
}

std::vector<std::string> TokenStrings(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : Tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

int CountTokens(std::string_view text) {
  return static_cast<int>(Tokenize(text).size());
}

bool IsPunctuationToken(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!IsAsciiPunct(c)) return false;
  }
  return true;
}

std::vector<std::string> AnalyzeTerms(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : Tokenize(text)) {
    if (!IsPunctuationToken(t.text)) out.push_back(std::move(t.text));
  }
  return out;
}

}  // namespace tdpr
