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

#ifndef TDPR_SPLITTER_H_
#define TDPR_SPLITTER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/corpus.h"

namespace tdpr {

inline constexpr int kDefaultMinTokens = 64;

// Similarity between two adjacent sentences; larger means more related.
using SentenceSimilarity =
    std::function<double(std::string_view, std::string_view)>;

// Jaccard index of the two sentences' analyzed term sets. Two empty sets
// count as identical (1.0).
double JaccardSimilarity(std::string_view a, std::string_view b);

struct SentenceSpan {
  size_t begin = 0;  // byte offsets into the paragraph
  size_t end = 0;
  int tokens = 0;
};

// Sentence boundaries fall after '.', '?', '!' or ';' followed by
// whitespace. A line starting with '|' is a Markdown table row and is always
// a segment of its own. Spans are trimmed and never empty.
std::vector<SentenceSpan> SegmentSentences(std::string_view paragraph);

struct SplitWarning {
  size_t sentence_index = 0;
  int sentence_tokens = 0;
  std::string message;
};

struct SplitResult {
  std::vector<std::string> chunks;
  std::vector<SplitWarning> warnings;
};

// Splits a paragraph into chunks of at most `limit` tokens at sentence
// boundaries. A paragraph within the limit is returned unchanged as a single
// chunk. Otherwise chunks are grown left to right: once the next sentence
// would overflow, the cut goes at the adjacent-sentence pair of least
// similarity inside the overfull window (ties resolve to the later pair).
// A sentence longer than `limit` on its own is cut at token boundaries and
// reported in `warnings`. Requires limit >= 16.
SplitResult SplitParagraph(std::string_view paragraph, int limit,
                           const SentenceSimilarity& similarity =
                               JaccardSimilarity);

// Merges runs of consecutive text passages with identical doc_id and
// section_path (newline-joined, first passage id kept) while the merged
// count stays within `limit` and the run contains a passage shorter than
// `min_tokens`. Table proxies are never merged. Idempotent.
std::vector<Passage> AggregateShort(const std::vector<Passage>& passages,
                                    int min_tokens = kDefaultMinTokens,
                                    int limit = kPassageTokenLimit);

}  // namespace tdpr

#endif  // TDPR_SPLITTER_H_
