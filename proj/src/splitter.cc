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

#include "tdpr/splitter.h"

#include <algorithm>
#include <set>

#include "tdpr/error.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

bool IsSentenceTerminator(char c) {
  return c == '.' || c == '?' || c == '!' || c == ';';
}

// Trims whitespace from [begin, end) and appends the span when non-empty.
void PushSpan(std::string_view text, size_t begin, size_t end,
              std::vector<SentenceSpan>& out) {
  while (begin < end) {
    const size_t ws = WhitespaceLengthAt(text, begin);
    if (ws == 0) break;
    begin += ws;
  }
  // Whitespace code points are at most 3 bytes; scan back conservatively.
  while (end > begin) {
    size_t trimmed = 0;
    for (size_t w = 1; w <= 3 && w <= end - begin; ++w) {
      if (WhitespaceLengthAt(text, end - w) == w) {
        trimmed = w;
        break;
      }
    }
    if (trimmed == 0) break;
    end -= trimmed;
  }
  if (begin >= end) return;
  out.push_back({begin, end, CountTokens(text.substr(begin, end - begin))});
}

void SegmentProse(std::string_view text, size_t begin, size_t end,
                  std::vector<SentenceSpan>& out) {
  size_t start = begin;
  for (size_t i = begin; i + 1 < end; ++i) {
    if (IsSentenceTerminator(text[i]) && WhitespaceLengthAt(text, i + 1) > 0) {
      PushSpan(text, start, i + 1, out);
      start = i + 1;
    }
  }
  PushSpan(text, start, end, out);
}

bool IsTableRow(std::string_view line) {
  size_t i = 0;
  while (i < line.size()) {
    const size_t ws = WhitespaceLengthAt(line, i);
    if (ws == 0) break;
    i += ws;
  }
  return i < line.size() && line[i] == '|';
}

}  // namespace

double JaccardSimilarity(std::string_view a, std::string_view b) {
  const auto ta = AnalyzeTerms(a);
  const auto tb = AnalyzeTerms(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  const size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<SentenceSpan> SegmentSentences(std::string_view paragraph) {
  std::vector<SentenceSpan> out;
  size_t prose_begin = 0;
  size_t line_begin = 0;
  while (line_begin <= paragraph.size()) {
    size_t line_end = paragraph.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = paragraph.size();
    const auto line = paragraph.substr(line_begin, line_end - line_begin);
    if (IsTableRow(line)) {
      SegmentProse(paragraph, prose_begin, line_begin, out);
      PushSpan(paragraph, line_begin, line_end, out);
      prose_begin = line_end;
    }
    if (line_end == paragraph.size()) break;
    line_begin = line_end + 1;
  }
  SegmentProse(paragraph, prose_begin, paragraph.size(), out);
  return out;
}

SplitResult SplitParagraph(std::string_view paragraph, int limit,
                           const SentenceSimilarity& similarity) {
  if (limit < 16) {
    throw UsageError("split limit must be at least 16, got " +
                     std::to_string(limit));
  }
  SplitResult result;
  const int total = CountTokens(paragraph);
  if (total == 0) return result;
  if (total <= limit) {
    result.chunks.emplace_back(paragraph);
    return result;
  }

  const auto spans = SegmentSentences(paragraph);
  const size_t n = spans.size();
  const auto sentence = [&](size_t i) {
    return paragraph.substr(spans[i].begin, spans[i].end - spans[i].begin);
  };
  const auto emit = [&](size_t first, size_t last) {
    result.chunks.emplace_back(paragraph.substr(
        spans[first].begin, spans[last].end - spans[first].begin));
  };
  // similarity between sentence i and i + 1, computed lazily.
  std::vector<double> pair_sim(n > 0 ? n - 1 : 0, 0.0);
  std::vector<bool> have_sim(pair_sim.size(), false);
  const auto sim = [&](size_t i) {
    if (!have_sim[i]) {
      pair_sim[i] = similarity(sentence(i), sentence(i + 1));
      have_sim[i] = true;
    }
    return pair_sim[i];
  };

  size_t i = 0;
  while (i < n) {
    if (spans[i].tokens > limit) {
      const auto tokens = Tokenize(sentence(i));
      const size_t base = spans[i].begin;
      for (size_t t = 0; t < tokens.size(); t += limit) {
        const size_t last = std::min(tokens.size(), t + limit) - 1;
        result.chunks.emplace_back(paragraph.substr(
            base + tokens[t].begin, tokens[last].end - tokens[t].begin));
      }
      result.warnings.push_back(
          {i, spans[i].tokens,
           "sentence of " + std::to_string(spans[i].tokens) +
               " tokens exceeds the limit of " + std::to_string(limit) +
               "; hard-split at token boundaries"});
      ++i;
      continue;
    }
    // Grow the window [i, j) while it fits.
    int used = 0;
    size_t j = i;
    while (j < n && used + spans[j].tokens <= limit) {
      used += spans[j].tokens;
      ++j;
    }
    if (j == n) {
      emit(i, n - 1);
      break;
    }
    // spans[j] overflows; cut at the least similar pair (b, b + 1), i<=b<j.
    size_t best = j - 1;
    double best_sim = sim(j - 1);
    for (size_t b = j - 1; b-- > i;) {
      const double s = sim(b);
      if (s < best_sim) {
        best_sim = s;
        best = b;
      }
    }
    emit(i, best);
    i = best + 1;
  }
  return result;
}

std::vector<Passage> AggregateShort(const std::vector<Passage>& passages,
                                    int min_tokens, int limit) {
  if (min_tokens >= limit) {
    throw UsageError("aggregation min_tokens must be below the limit");
  }
  std::vector<Passage> out;
  bool group_has_short = false;
  bool group_open = false;
  for (const Passage& p : passages) {
    const bool is_text = p.kind == PassageKind::kText;
    const bool short_p = p.token_count < min_tokens;
    if (group_open && is_text) {
      Passage& g = out.back();
      if (g.doc_id == p.doc_id && g.section_path == p.section_path &&
          g.token_count + p.token_count <= limit &&
          (group_has_short || short_p)) {
        g.text += '\n';
        g.text += p.text;
        g.token_count = CountTokens(g.text);
        group_has_short = true;
        continue;
      }
    }
    out.push_back(p);
    group_open = is_text;
    group_has_short = is_text && short_p;
  }
  return out;
}

}  // namespace tdpr
