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

#ifndef TDPR_RAG_H_
#define TDPR_RAG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/corpus.h"
#include "tdpr/error.h"
#include "tdpr/llm_client.h"
#include "tdpr/mcq.h"
#include "tdpr/retriever.h"

namespace tdpr {

struct AssembledContext {
  std::string text;
  int tokens = 0;
  size_t n_items = 0;
  std::vector<std::string> warnings;
};

// Concatenates items in rank order, each as "[[doc_id § s1 / s2]]\n" plus its
// content, separated by blank lines. Stops at the first item that would push
// the token count past `max_tokens`; tables are never cut. An oversized
// first item is kept whole with a warning. Requires max_tokens >= 128.
AssembledContext AssembleContext(const std::vector<ContextItem>& items,
                                 int max_tokens);

std::string BuildMcqPrompt(const MCQItem& item, std::string_view context);

class UnparseableAnswerError : public DataError {
 public:
  using DataError::DataError;
};

// First standalone option letter (case-insensitive, delimited by
// non-alphanumerics) that is within range, as a 0-based index. Throws
// UnparseableAnswerError when there is none and UsageError unless
// 2 <= n_options <= 5.
int ParseMcqAnswer(std::string_view llm_text, int n_options);

struct McqAnswer {
  std::string item_id;
  std::optional<int> predicted_index;
  std::string status;  // "ok" | "unparseable" | "llm_error"
  std::string reply;
  RunLogEntry log;
  size_t context_items = 0;
};

struct AnswerOptions {
  int k = 10;
  int max_context_tokens = 4096;
  int max_answer_tokens = 16;
};

// Retrieve, resolve tables, assemble context, prompt and parse. A null
// retriever (or zero hits) gives the zero-shot prompt with empty context.
// LLM failures do not throw; they mark the answer "llm_error".
McqAnswer AnswerMcq(const MCQItem& item, const Retriever* retriever,
                    const Corpus& corpus, LLMClient& llm,
                    const AnswerOptions& options = {});

}  // namespace tdpr

#endif  // TDPR_RAG_H_
