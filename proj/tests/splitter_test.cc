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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <map>
#include <random>

#include "support/test_util.h"
#include "tdpr/error.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

using ::testing::ElementsAre;
using testing::RandomSentence;

std::string Words(int n, const std::string& stem = "tok") {
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s += ' ';
    s += stem + std::to_string(i);
  }
  return s;
}

std::vector<std::string> JoinedTokens(const std::vector<std::string>& chunks) {
  std::vector<std::string> out;
  for (const auto& c : chunks) {
    for (auto& t : TokenStrings(c)) out.push_back(std::move(t));
  }
  return out;
}

TEST(SegmentSentencesTest, TerminatorsFollowedByWhitespace) {
  const std::string p = "One. Two? Three! Four; five.six end";
  std::vector<std::string> got;
  for (const auto& s : SegmentSentences(p)) {
    got.push_back(p.substr(s.begin, s.end - s.begin));
  }
  EXPECT_THAT(got, ElementsAre("One.", "Two?", "Three!", "Four;",
                               "five.six end"));
}

TEST(SegmentSentencesTest, TableRowsAreOwnSegments) {
  const std::string p = "Intro text. See table.\n| a | b. c |\n|---|---|\nAfter.";
  std::vector<std::string> got;
  for (const auto& s : SegmentSentences(p)) {
    got.push_back(p.substr(s.begin, s.end - s.begin));
  }
  EXPECT_THAT(got, ElementsAre("Intro text.", "See table.", "| a | b. c |",
                               "|---|---|", "After."));
}

TEST(JaccardSimilarityTest, Values) {
  EXPECT_DOUBLE_EQ(JaccardSimilarity("a b c", "b c d"), 2.0 / 4.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity("A, b.", "a b"), 1.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity("x", "y"), 0.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity("", "..."), 1.0);
}

TEST(SplitParagraphTest, UnderLimitReturnsInput) {
  const std::string p = Words(100) + ".";
  const auto r = SplitParagraph(p, 512);
  ASSERT_EQ(r.chunks.size(), 1u);
  EXPECT_EQ(r.chunks[0], p);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(SplitParagraphTest, EmptyParagraphYieldsNoChunks) {
  EXPECT_TRUE(SplitParagraph("   ", 64).chunks.empty());
}

TEST(SplitParagraphTest, LimitBelowSixteenIsUsageError) {
  EXPECT_THROW(SplitParagraph("a b c", 15), UsageError);
}

TEST(SplitParagraphTest, LongParagraphNeedsAtLeastThreeChunks) {
  std::mt19937_64 rng(3);
  std::string p;
  while (CountTokens(p) < 1030) {
    p += RandomSentence(rng, 5, 25) + ". ";
  }
  while (CountTokens(p) > 1030) p.pop_back();
  ASSERT_EQ(CountTokens(p), 1030);
  const auto r = SplitParagraph(p, 512);
  EXPECT_GE(r.chunks.size(), 3u);
  for (const auto& c : r.chunks) EXPECT_LE(CountTokens(c), 512);
  EXPECT_EQ(JoinedTokens(r.chunks), TokenStrings(p));
}

TEST(SplitParagraphTest, OversizedSentenceIsHardSplitWithWarning) {
  const std::string p = Words(40) + ". Short tail.";
  const auto r = SplitParagraph(p, 16);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].sentence_index, 0u);
  EXPECT_EQ(r.warnings[0].sentence_tokens, 41);
  for (const auto& c : r.chunks) EXPECT_LE(CountTokens(c), 16);
  EXPECT_EQ(JoinedTokens(r.chunks), TokenStrings(p));
}

// Similarity looked up from a table keyed by the sentences' first token.
SentenceSimilarity TableSimilarity(std::map<std::pair<std::string, std::string>,
                                            double> table) {
  return [table](std::string_view a, std::string_view b) {
    return table.at({TokenStrings(a).front(), TokenStrings(b).front()});
  };
}

TEST(SplitParagraphTest, CutsAtStrictlyLeastSimilarPair) {
  // Four 150-token sentences, limit 512; (s2, s3) is the weakest link.
  const std::string s1 = "s1 " + Words(148, "a") + ".";
  const std::string s2 = "s2 " + Words(148, "b") + ".";
  const std::string s3 = "s3 " + Words(148, "c") + ".";
  const std::string s4 = "s4 " + Words(148, "d") + ".";
  const auto sim = TableSimilarity({{{"s1", "s2"}, 0.6},
                                    {{"s2", "s3"}, 0.1},
                                    {{"s3", "s4"}, 0.5}});
  const auto r = SplitParagraph(s1 + " " + s2 + " " + s3 + " " + s4, 512, sim);
  EXPECT_THAT(r.chunks, ElementsAre(s1 + " " + s2, s3 + " " + s4));
}

TEST(SplitParagraphTest, TiesGoToTheLaterPair) {
  const std::string s1 = "s1 " + Words(148, "a") + ".";
  const std::string s2 = "s2 " + Words(148, "b") + ".";
  const std::string s3 = "s3 " + Words(148, "c") + ".";
  const std::string s4 = "s4 " + Words(148, "d") + ".";
  const auto sim = TableSimilarity({{{"s1", "s2"}, 0.2},
                                    {{"s2", "s3"}, 0.2},
                                    {{"s3", "s4"}, 0.2}});
  const auto r = SplitParagraph(s1 + " " + s2 + " " + s3 + " " + s4, 512, sim);
  EXPECT_THAT(r.chunks, ElementsAre(s1 + " " + s2 + " " + s3, s4));
}

// Oracle: enumerate every single sentence-boundary split of a four-sentence
// paragraph, keep those whose halves both fit, and take the least similar.
TEST(SplitParagraphTest, MinimalBoundaryMatchesEnumeration) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 200) {
    const int limit = 64;
    std::vector<int> sizes(4);
    for (int& s : sizes) s = 8 + static_cast<int>(rng() % 40);
    int total = 0;
    for (int s : sizes) total += s;
    if (total <= limit) continue;
    std::vector<std::string> sentences;
    for (int i = 0; i < 4; ++i) {
      sentences.push_back("s" + std::to_string(i) + " " +
                          Words(sizes[i] - 2, "w" + std::to_string(i)) + ".");
    }
    std::map<std::pair<std::string, std::string>, double> table;
    std::vector<double> sims(3);
    for (int b = 0; b < 3; ++b) {
      sims[b] = static_cast<double>(rng() % 1000) / 1000.0;
      table[{"s" + std::to_string(b), "s" + std::to_string(b + 1)}] = sims[b];
    }
    // Enumerate boundaries after sentence m (m = 1..3).
    int best_m = -1;
    double best_sim = 2.0;
    int valid = 0;
    for (int m = 1; m <= 3; ++m) {
      int left = 0;
      for (int i = 0; i < m; ++i) left += sizes[i];
      if (left > limit || total - left > limit) continue;
      ++valid;
      if (sims[m - 1] < best_sim) {
        best_sim = sims[m - 1];
        best_m = m;
      }
    }
    // The global minimum must be a valid boundary and strictly minimal.
    if (valid == 0) continue;
    bool strict = true;
    for (int b = 0; b < 3; ++b) {
      if (b != best_m - 1 && sims[b] <= best_sim) strict = false;
    }
    if (!strict) continue;
    std::string p;
    for (const auto& s : sentences) p += (p.empty() ? "" : " ") + s;
    const auto r = SplitParagraph(p, limit, TableSimilarity(table));
    std::string left, right;
    for (int i = 0; i < 4; ++i) {
      std::string& side = i < best_m ? left : right;
      side += (side.empty() ? "" : " ") + sentences[i];
    }
    ASSERT_THAT(r.chunks, ElementsAre(left, right)) << "case " << checked;
    ++checked;
  }
}

TEST(SplitParagraphTest, PropertyLosslessAndBounded) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 1000; ++iter) {
    const int limit = 16 + static_cast<int>(rng() % 200);
    std::string p;
    const int n_sent = 1 + static_cast<int>(rng() % 30);
    static const char* kEnds[] = {".", "?", "!", ";", "", ","};
    for (int s = 0; s < n_sent; ++s) {
      if (rng() % 10 == 0) {
        p += "\n| " + RandomSentence(rng, 1, 6) + " | x |\n";
        continue;
      }
      const int max_words = rng() % 20 == 0 ? 300 : 30;
      p += RandomSentence(rng, 1, max_words) + kEnds[rng() % 6];
      p += rng() % 3 == 0 ? "\n" : " ";
    }
    const auto r = SplitParagraph(p, limit);
    for (const auto& c : r.chunks) {
      ASSERT_LE(CountTokens(c), limit);
      ASSERT_GT(CountTokens(c), 0);
    }
    ASSERT_EQ(JoinedTokens(r.chunks), TokenStrings(p)) << p;
    // Cuts fall on sentence boundaries unless a warning reports a hard split.
    if (r.warnings.empty()) {
      const auto spans = SegmentSentences(p);
      size_t span = 0;
      for (const auto& c : r.chunks) {
        int need = CountTokens(c);
        while (need > 0 && span < spans.size()) need -= spans[span++].tokens;
        ASSERT_EQ(need, 0);
      }
    }
  }
}

Passage Text(const std::string& id, const std::string& section, int tokens,
              const std::string& doc = "D") {
  return MakePassage(id, doc, {section}, PassageKind::kText, Words(tokens));
}

TEST(AggregateShortTest, MergesTwoShortPassagesInSameSection) {
  const auto out = AggregateShort({Text("p1", "S", 20), Text("p2", "S", 20)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].passage_id, "p1");
  EXPECT_EQ(out[0].token_count, 40);
  EXPECT_EQ(out[0].text, Words(20) + "\n" + Words(20));
}

TEST(AggregateShortTest, SectionGuard) {
  const auto out = AggregateShort({Text("p1", "S1", 20), Text("p2", "S2", 20)});
  EXPECT_EQ(out.size(), 2u);
}

TEST(AggregateShortTest, DocumentGuard) {
  const auto out = AggregateShort(
      {Text("p1", "S", 20, "D1"), Text("p2", "S", 20, "D2")});
  EXPECT_EQ(out.size(), 2u);
}

TEST(AggregateShortTest, LimitGuard) {
  const auto out = AggregateShort({Text("p1", "S", 300), Text("p2", "S", 250)});
  EXPECT_EQ(out.size(), 2u);
}

TEST(AggregateShortTest, TableProxiesNeverMerged) {
  const auto cap = MakePassage("c", "D", {"S"}, PassageKind::kTableCaption,
                               "tiny", "T1");
  const auto out =
      AggregateShort({Text("p1", "S", 5), cap, Text("p2", "S", 5)});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[1].passage_id, "c");
}

TEST(AggregateShortTest, LongNeighboursWithoutShortStayApart) {
  const auto out = AggregateShort({Text("p1", "S", 100), Text("p2", "S", 100)});
  EXPECT_EQ(out.size(), 2u);
}

TEST(AggregateShortTest, MinTokensMustBeBelowLimit) {
  EXPECT_THROW(AggregateShort({}, 512, 512), UsageError);
}

TEST(AggregateShortTest, PropertyIdempotentOrderPreservingBounded) {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<Passage> in;
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      const std::string id = "p" + std::to_string(i);
      const std::string sec = "S" + std::to_string(rng() % 2);
      const std::string doc = "D" + std::to_string(rng() % 2);
      if (rng() % 6 == 0) {
        in.push_back(MakePassage(id, doc, {sec}, PassageKind::kTableCaption,
                                 "cap", "T"));
      } else {
        in.push_back(Text(id, sec, 1 + static_cast<int>(rng() % 300), doc));
      }
    }
    const int min_tokens = 1 + static_cast<int>(rng() % 100);
    const auto once = AggregateShort(in, min_tokens, 512);
    const auto twice = AggregateShort(once, min_tokens, 512);
    ASSERT_EQ(once, twice);
    // Order and content preserved; merged passages respect the limit.
    std::vector<std::string> in_tokens, out_tokens;
    for (const auto& p : in) {
      for (auto& t : TokenStrings(p.text)) in_tokens.push_back(t);
    }
    for (const auto& p : once) {
      if (p.kind == PassageKind::kText) {
        ASSERT_LE(p.token_count, 512);
        ASSERT_EQ(p.token_count, CountTokens(p.text));
      }
      for (auto& t : TokenStrings(p.text)) out_tokens.push_back(t);
    }
    ASSERT_EQ(in_tokens, out_tokens);
  }
}

}  // namespace
}  // namespace tdpr
