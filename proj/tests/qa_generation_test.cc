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

#include "tdpr/qa_generation.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <sstream>

#include "support/test_util.h"
#include "tdpr/error.h"
#include "tdpr/prompts.h"

namespace tdpr {
namespace {

using ::testing::HasSubstr;

// Replies with a fixed text and records the prompt.
class ScriptedLLM : public LLMClient {
 public:
  explicit ScriptedLLM(std::string reply) : reply_(std::move(reply)) {}
  std::string Generate(std::string_view prompt, int) override {
    last_prompt = prompt;
    return reply_;
  }
  std::string name() const override { return "scripted"; }
  std::string last_prompt;

 private:
  std::string reply_;
};

// Reference split rule: FNV-1a 64 seeded with offset ^ seed, top 53 bits
// as a uniform draw.
Split ReferenceSplit(const std::string& id, uint64_t seed, double fraction) {
  uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < fraction ? Split::kTest : Split::kTrain;
}

class QaGenerationTest : public ::testing::Test {
 protected:
  QaGenerationTest() : corpus_(testing::ParseCorpusText(testing::kTinyCorpus)) {}
  Corpus corpus_;
};

TEST_F(QaGenerationTest, TwoWellFormedBlocksGiveTwoPairs) {
  ScriptedLLM llm(
      "Q1: How long does a radio frame last in NR?\n"
      "A1: Ten milliseconds.\n"
      "Q2: How many subframes does a radio frame hold?\n"
      "A2: Ten subframes.\n");
  const auto r = GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm);
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_TRUE(r.warnings.empty());
  for (const auto& p : r.pairs) EXPECT_EQ(p.passage_id, "D1#p1");
  EXPECT_EQ(r.pairs[0].question_id, "D1#p1#q1");
  EXPECT_EQ(r.pairs[1].answer, "Ten subframes.");
  EXPECT_THAT(llm.last_prompt, HasSubstr("A radio frame lasts ten"));
}

TEST_F(QaGenerationTest, CapAndMalformedBlocks) {
  ScriptedLLM llm(
      "Some preamble\n"
      "Q1: First question about frames here?\nA1: Frames.\n"
      "Q2: A question without an answer?\n"
      "Q3: Third question about frames here?\nA3: Ten.\n");
  QaGenerationOptions o;
  o.max_questions = 1;
  const auto r = GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm, o);
  EXPECT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.warnings.size(), 2u);
  o.max_questions = 5;
  EXPECT_EQ(GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm, o).pairs.size(),
            2u);
  o.max_questions = 0;
  EXPECT_THROW(GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm, o),
               UsageError);
  o.max_questions = 6;
  EXPECT_THROW(GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm, o),
               UsageError);
}

TEST_F(QaGenerationTest, CaptionPromptCarriesTableRows) {
  ScriptedLLM llm("");
  GenerateQaPairs(corpus_.passage("D3#t1c"), corpus_, llm);
  EXPECT_THAT(llm.last_prompt, HasSubstr("| 1 | 100 Mbps |"));
  GenerateQaPairs(corpus_.passage("D3#p1"), corpus_, llm);
  EXPECT_EQ(llm.last_prompt.find('|'), std::string::npos);
}

TEST_F(QaGenerationTest, MockLlmPairsSurviveFilter) {
  MockLLMClient llm;
  for (const auto& p : corpus_.passages()) {
    if (p.kind == PassageKind::kTableSummary) continue;
    const auto r = GenerateQaPairs(p, corpus_, llm);
    EXPECT_LE(r.pairs.size(), 5u);
    const auto kept = FilterQaPairs(r.pairs, corpus_);
    for (const auto& q : kept) EXPECT_EQ(q.passage_id, p.passage_id);
  }
  const auto caption = GenerateQaPairs(corpus_.passage("D3#t1c"), corpus_, llm);
  ASSERT_FALSE(caption.pairs.empty());
  EXPECT_THAT(caption.pairs.back().answer, HasSubstr("Max rate"));
}

TEST_F(QaGenerationTest, SplitFollowsSeededHash) {
  std::string reply;
  for (int i = 1; i <= 5; ++i) {
    reply += "Q" + std::to_string(i) + ": Question number " +
             std::to_string(i) + " about frames?\nA" + std::to_string(i) +
             ": Frames.\n";
  }
  ScriptedLLM llm(reply);
  for (uint64_t seed : {1u, 42u, 7u}) {
    QaGenerationOptions o;
    o.seed = seed;
    for (const auto& p : corpus_.passages()) {
      for (const auto& q : GenerateQaPairs(p, corpus_, llm, o).pairs) {
        EXPECT_EQ(q.split, ReferenceSplit(q.question_id, seed, 0.3))
            << q.question_id;
      }
    }
  }
  QaGenerationOptions all_test;
  all_test.test_fraction = 1.0;
  for (const auto& q :
       GenerateQaPairs(corpus_.passage("D1#p1"), corpus_, llm, all_test).pairs) {
    EXPECT_EQ(q.split, Split::kTest);
  }
}

QAPair Pair(std::string id, std::string q, std::string a,
            std::string pid = "D1#p1") {
  return {std::move(id), std::move(q), std::move(a), std::move(pid),
          Split::kTrain};
}

TEST_F(QaGenerationTest, FilterRules) {
  const std::vector<QAPair> in = {
      Pair("k1", "How long does a radio frame last?", "Ten milliseconds."),
      Pair("dup", "  how long does a RADIO frame last?", "Ten milliseconds."),
      Pair("short", "Frame length?", "Ten milliseconds."),
      Pair("nooverlap", "What colour is the sky today?", "Blue."),
      Pair("stoponly", "What is in the frame then?", "It is the one."),
      Pair("dangling", "How long does a radio frame last?", "Ten.", "nope"),
      Pair("table", "Which columns does the table have?", "Max rate.",
           "D3#t1c"),
  };
  const auto out = FilterQaPairs(in, corpus_);
  std::vector<std::string> ids;
  for (const auto& p : out) ids.push_back(p.question_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"k1", "table"}));

  std::string long_q;
  for (int i = 0; i < 65; ++i) long_q += "frame ";
  EXPECT_TRUE(FilterQaPairs({Pair("long", long_q, "Ten.")}, corpus_).empty());
}

TEST_F(QaGenerationTest, JsonlRoundTripAndValidation) {
  std::vector<QAPair> pairs = {
      Pair("a", "How long is a frame \"exactly\"?", "Ten ms."),
      {"b", "Which node sends the request?", "Source gNB", "D2#p1", Split::kTest}};
  std::stringstream ss;
  WriteQaPairs(pairs, ss);
  EXPECT_EQ(ParseQaPairs(ss, "<t>", &corpus_), pairs);

  std::istringstream dup(
      R"({"question_id":"a","question":"q","answer":"x","passage_id":"D1#p1","split":"train"})"
      "\n"
      R"({"question_id":"a","question":"q","answer":"x","passage_id":"D1#p1","split":"train"})");
  try {
    ParseQaPairs(dup, "qa.jsonl");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_THAT(e.what(), HasSubstr("qa.jsonl:2"));
  }
  std::istringstream dangling(
      R"({"question_id":"a","question":"q","passage_id":"zz","split":"test"})");
  EXPECT_THROW(ParseQaPairs(dangling, "<t>", &corpus_), DataError);
  std::istringstream bad_split(
      R"({"question_id":"a","question":"q","passage_id":"D1#p1","split":"dev"})");
  EXPECT_THROW(ParseQaPairs(bad_split, "<t>"), DataError);
}

TEST_F(QaGenerationTest, TrainingPairsBySplit) {
  std::vector<QAPair> pairs = {
      Pair("a", "q a", "x"),
      {"b", "q b", "y", "D2#p1", Split::kTest},
      Pair("c", "q c", "z", "D3#p1")};
  const auto train = TrainingPairsFor(pairs, Split::kTrain);
  ASSERT_EQ(train.size(), 2u);
  EXPECT_EQ(train[1].question_id, "c");
  EXPECT_EQ(train[1].question_text, "q c");
  EXPECT_EQ(train[1].positive_passage_id, "D3#p1");
  EXPECT_EQ(TrainingPairsFor(pairs, Split::kTest).size(), 1u);
}

}  // namespace
}  // namespace tdpr
