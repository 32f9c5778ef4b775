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

#ifndef TDPR_QA_GENERATION_H_
#define TDPR_QA_GENERATION_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/corpus.h"
#include "tdpr/llm_client.h"
#include "tdpr/trainer.h"

namespace tdpr {

enum class Split { kTrain, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);  // throws DataError

struct QAPair {
  std::string question_id;
  std::string question;
  std::string answer;
  std::string passage_id;
  Split split = Split::kTrain;

  bool operator==(const QAPair&) const = default;
};

// QA-pair JSONL. When `corpus` is given every passage_id must resolve.
std::vector<QAPair> ParseQaPairs(std::istream& in, std::string_view source,
                                 const Corpus* corpus = nullptr);
std::vector<QAPair> LoadQaPairs(const std::string& path,
                                const Corpus* corpus = nullptr);
void WriteQaPairs(const std::vector<QAPair>& pairs, std::ostream& out);

struct QaGenerationOptions {
  int max_questions = 5;         // 1..5
  double test_fraction = 0.3;    // share of pairs stamped "test"
  uint64_t seed = 42;
  int max_tokens = 1024;
};

struct QaGenerationResult {
  std::vector<QAPair> pairs;
  std::vector<std::string> warnings;
};

// Prompts `llm` with the passage (plus the linked table's Markdown for
// table_caption passages) and parses "Q<n>: ... / A<n>: ..." blocks. Blocks
// that do not parse are skipped with a warning; at most max_questions pairs
// are kept. Ids are "<passage_id>#q<n>"; the split is a seeded hash of the
// id, so it does not depend on generation order.
QaGenerationResult GenerateQaPairs(const Passage& passage,
                                   const Corpus& corpus, LLMClient& llm,
                                   const QaGenerationOptions& options = {});

// Mechanical post-filter: drops questions under 5 or over 64 tokens,
// repeated questions (case-folded, first kept) and answers sharing no
// content term with the source passage (caption passages also count their
// table). Pairs whose passage is not in the corpus are dropped as well.
std::vector<QAPair> FilterQaPairs(const std::vector<QAPair>& pairs,
                                  const Corpus& corpus);

std::vector<TrainingPair> TrainingPairsFor(const std::vector<QAPair>& pairs,
                                           Split split);

}  // namespace tdpr

#endif  // TDPR_QA_GENERATION_H_
