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

#include "tdpr/rag.h"

#include <cctype>

#include "tdpr/prompts.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

std::string ItemHeader(const ContextItem& item) {
  std::string h = "[[" + item.doc_id + " \xC2\xA7 ";  // U+00A7
  for (size_t i = 0; i < item.section_path.size(); ++i) {
    if (i > 0) h += " / ";
    h += item.section_path[i];
  }
  h += "]]\n";
  return h;
}

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

}  // namespace

AssembledContext AssembleContext(const std::vector<ContextItem>& items,
                                 int max_tokens) {
  if (max_tokens < 128) {
    throw UsageError("context budget must be at least 128 tokens");
  }
  AssembledContext ctx;
  for (const auto& item : items) {
    const std::string block = ItemHeader(item) + item.content;
    const int cost = CountTokens(block);
    if (ctx.tokens + cost > max_tokens) {
      if (ctx.n_items > 0) break;
      ctx.warnings.push_back("item '" + item.source_passage_id + "' (" +
                             std::to_string(cost) +
                             " tokens) exceeds the context budget of " +
                             std::to_string(max_tokens) +
                             "; included whole");
    }
    if (ctx.n_items > 0) ctx.text += "\n\n";
    ctx.text += block;
    ctx.tokens += cost;
    ++ctx.n_items;
  }
  return ctx;
}

std::string BuildMcqPrompt(const MCQItem& item, std::string_view context) {
  return BuildMcqPrompt(item.question, item.options, context);
}

int ParseMcqAnswer(std::string_view llm_text, int n_options) {
  if (n_options < 2 || n_options > 5) {
    throw UsageError("n_options must be between 2 and 5");
  }
  for (size_t i = 0; i < llm_text.size(); ++i) {
    const char c = llm_text[i];
    if (!std::isalpha(static_cast<unsigned char>(c))) continue;
    const bool left_ok = i == 0 || !IsAlnum(llm_text[i - 1]);
    const bool right_ok = i + 1 == llm_text.size() || !IsAlnum(llm_text[i + 1]);
    if (!left_ok || !right_ok) continue;
    const int index = std::toupper(static_cast<unsigned char>(c)) - 'A';
    if (index >= 0 && index < n_options) return index;
  }
  throw UnparseableAnswerError("no option letter A-" +
                               std::string(1, static_cast<char>('A' + n_options - 1)) +
                               " in reply");
}

McqAnswer AnswerMcq(const MCQItem& item, const Retriever* retriever,
                    const Corpus& corpus, LLMClient& llm,
                    const AnswerOptions& options) {
  if (options.k < 1) throw UsageError("k must be >= 1");
  McqAnswer answer;
  answer.item_id = item.item_id;
  answer.log.query_id = item.item_id;
  answer.log.k = options.k;
  std::string context;
  if (retriever != nullptr) {
    answer.log.method = RetrieverMethodName(retriever->config().method);
    if (retriever->config().method == RetrieverMethod::kDhr) {
      answer.log.d = retriever->config().d;
    }
    answer.log.results = retriever->Retrieve(item.question, options.k);
    const auto assembled = AssembleContext(
        ResolveTables(answer.log.results, corpus), options.max_context_tokens);
    context = assembled.text;
    answer.context_items = assembled.n_items;
  } else {
    answer.log.method = "zero-shot";
  }
  const std::string prompt = BuildMcqPrompt(item, context);
  try {
    answer.reply = llm.Generate(prompt, options.max_answer_tokens);
  } catch (const ProviderError& e) {
    answer.status = "llm_error";
    answer.reply = e.what();
    return answer;
  }
  try {
    answer.predicted_index =
        ParseMcqAnswer(answer.reply, static_cast<int>(item.options.size()));
    answer.status = "ok";
  } catch (const UnparseableAnswerError&) {
    answer.status = "unparseable";
  }
  return answer;
}

}  // namespace tdpr
