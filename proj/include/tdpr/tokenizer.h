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

#ifndef TDPR_TOKENIZER_H_
#define TDPR_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tdpr {

// A token with its byte span in the source text. `text` is lowercased.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
};

// Whitespace tokenizer used for every token budget in the project.
//
// Rules: split on Unicode whitespace; each leading and trailing ASCII
// punctuation character of a word becomes its own token; the remaining core
// is one token; everything is ASCII-lowercased. Deterministic and
// byte-oriented, so identical on every platform.
std::vector<Token> Tokenize(std::string_view text);

// Lowercased token strings, in order.
std::vector<std::string> TokenStrings(std::string_view text);

// Number of tokens. Zero only for empty or whitespace-only input.
int CountTokens(std::string_view text);

// True when every byte of `token` is ASCII punctuation.
bool IsPunctuationToken(std::string_view token);

// Tokens with punctuation-only tokens dropped. This is the analysis chain
// shared by the sparse index, the hash embedder and the QA filters.
std::vector<std::string> AnalyzeTerms(std::string_view text);

// Byte length of the whitespace code point starting at `pos`, or 0.
size_t WhitespaceLengthAt(std::string_view text, size_t pos);

}  // namespace tdpr

#endif  // TDPR_TOKENIZER_H_
