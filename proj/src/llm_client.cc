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

#include "tdpr/llm_client.h"

#include <set>
#include <vector>

#include "http_util.h"
#include "json.hpp"
#include "tdpr/error.h"
#include "tdpr/hash.h"
#include "tdpr/prompts.h"
#include "tdpr/splitter.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string_view> Lines(std::string_view s) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start <= s.size()) {
    auto nl = s.find('\n', start);
    if (nl == std::string_view::npos) nl = s.size();
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

// Text between `open` and the next "\n>>>" after it.
std::string_view Block(std::string_view prompt, std::string_view open) {
  const auto b = prompt.find(open);
  if (b == std::string_view::npos) return {};
  const auto start = b + open.size();
  const auto e = prompt.find("\n>>>", start);
  if (e == std::string_view::npos) return prompt.substr(start);
  return prompt.substr(start, e - start);
}

std::string MockTableSummary(std::string_view prompt) {
  const auto cap = prompt.find("\nCaption: ");
  const auto tab = prompt.find("\nTable:\n");
  if (cap == std::string_view::npos || tab == std::string_view::npos) return "";
  const auto caption = prompt.substr(cap + 10, tab - cap - 10);
  return RuleBasedTableSummary(caption, prompt.substr(tab + 8));
}

// Picks the option whose terms are best covered by the context; without
// context, a hash of the question decides.
std::string MockMcqAnswer(std::string_view prompt) {
  constexpr std::string_view kOpen = "\nContext:\n<<<\n";
  constexpr std::string_view kClose = "\n>>>\nQuestion: ";
  const auto open = prompt.find(kOpen);
  const auto close = prompt.rfind(kClose);
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open + kOpen.size() - 1) {
    return "";
  }
  const auto context =
      close >= open + kOpen.size()
          ? prompt.substr(open + kOpen.size(), close - open - kOpen.size())
          : std::string_view{};
  const auto tail = Lines(prompt.substr(close + kClose.size()));
  // tail: question lines..., options..., directive
  std::vector<std::string_view> options;
  for (size_t i = tail.size() - 1; i-- > 0;) {
    const auto line = tail[i];
    if (line.size() >= 3 && line[0] >= 'A' && line[0] <= 'E' &&
        line[1] == '.' && line[2] == ' ') {
      options.insert(options.begin(), line.substr(3));
      if (line[0] == 'A') break;
    } else {
      break;
    }
  }
  if (options.empty()) return "";
  const auto question = tail.front();

  if (AnalyzeTerms(context).empty()) {
    const size_t pick = Fnv1a64(question) % options.size();
    return std::string(1, static_cast<char>('A' + pick));
  }
  const auto ctx_terms = AnalyzeTerms(context);
  const std::set<std::string> ctx(ctx_terms.begin(), ctx_terms.end());
  size_t best = 0;
  double best_score = -1.0;
  for (size_t i = 0; i < options.size(); ++i) {
    const auto terms = AnalyzeTerms(options[i]);
    const std::set<std::string> uniq(terms.begin(), terms.end());
    size_t hit = 0;
    for (const auto& t : uniq) hit += ctx.count(t);
    const double score =
        uniq.empty() ? 0.0
                     : static_cast<double>(hit) / static_cast<double>(uniq.size());
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return std::string(1, static_cast<char>('A' + best));
}

std::string MockQaPairs(std::string_view prompt) {
  int max_q = 1;
  constexpr std::string_view kBetween = "between 1 and ";
  if (const auto at = prompt.find(kBetween); at != std::string_view::npos) {
    max_q = std::max(1, std::atoi(std::string(prompt.substr(at + kBetween.size(), 2)).c_str()));
  }
  const auto passage = Block(prompt, "Passage:\n<<<\n");
  const auto table = Block(prompt, "\nTable:\n<<<\n");
  std::string out;
  int n = 0;
  for (const auto& span : SegmentSentences(passage)) {
    if (n >= max_q) break;
    const auto sentence = passage.substr(span.begin, span.end - span.begin);
    const auto terms = AnalyzeTerms(sentence);
    if (terms.size() < 3) continue;
    std::string topic;
    for (size_t i = 0; i < terms.size() && i < 6; ++i) {
      if (i > 0) topic += ' ';
      topic += terms[i];
    }
    ++n;
    out += "Q" + std::to_string(n) +
           ": What does the specification state about " + topic + "?\n";
    out += "A" + std::to_string(n) + ": " + std::string(sentence) + "\n";
  }
  if (!table.empty() && n < max_q) {
    const auto cells = MarkdownHeaderCells(table);
    if (!cells.empty()) {
      ++n;
      std::string cols;
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) cols += ", ";
        cols += cells[i];
      }
      const auto caption_terms = AnalyzeTerms(passage);
      std::string topic;
      for (size_t i = 0; i < caption_terms.size() && i < 6; ++i) {
        if (i > 0) topic += ' ';
        topic += caption_terms[i];
      }
      out += "Q" + std::to_string(n) + ": Which columns are listed in the table on " +
             topic + "?\n";
      out += "A" + std::to_string(n) + ": The table lists " + cols + ".\n";
    }
  }
  return out;
}

std::string MockOpenAnswer(std::string_view prompt) {
  const auto context = Block(prompt, "\nContext:\n<<<\n");
  for (const auto line : Lines(context)) {
    if (line.empty() || StartsWith(line, "[[")) continue;
    return std::string(line);
  }
  return "No answer found in the context.";
}

}  // namespace

std::string MockLLMClient::Generate(std::string_view prompt, int /*max_tokens*/) {
  if (StartsWith(prompt, kTableSummaryInstruction)) {
    return MockTableSummary(prompt);
  }
  if (StartsWith(prompt, kMcqInstruction)) return MockMcqAnswer(prompt);
  if (StartsWith(prompt, kQaGenerationInstruction)) return MockQaPairs(prompt);
  if (StartsWith(prompt, kOpenAnswerInstruction)) return MockOpenAnswer(prompt);
  return "";
}

void EchoMockLLMClient::Add(std::string_view prompt, std::string reply) {
  replies_[Fnv1a64(prompt)] = std::move(reply);
}

void EchoMockLLMClient::AddByHash(uint64_t prompt_hash, std::string reply) {
  replies_[prompt_hash] = std::move(reply);
}

std::string EchoMockLLMClient::Generate(std::string_view prompt,
                                        int /*max_tokens*/) {
  auto it = replies_.find(Fnv1a64(prompt));
  if (it == replies_.end()) {
    throw ProviderError("echo-mock has no reply for this prompt", false);
  }
  return it->second;
}

HttpLLMClient::HttpLLMClient(std::string endpoint, int timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {}

std::string HttpLLMClient::Generate(std::string_view prompt, int max_tokens) {
  nlohmann::json body;
  body["prompt"] = std::string(prompt);
  body["max_tokens"] = max_tokens;
  const auto res =
      internal::PostJson(endpoint_, "/generate", body.dump(), timeout_seconds_);
  if (res.status != 200) {
    throw ProviderError("LLM endpoint returned HTTP " +
                        std::to_string(res.status) + ": " + res.body);
  }
  try {
    return nlohmann::json::parse(res.body).at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed LLM response: ") + e.what(),
                        false);
  }
}

std::unique_ptr<LLMClient> MakeLLMClient(std::string_view kind,
                                         const std::string& endpoint) {
  if (kind == "mock") return std::make_unique<MockLLMClient>();
  if (kind == "http") {
    if (endpoint.empty()) throw UsageError("llm 'http' requires an endpoint");
    return std::make_unique<HttpLLMClient>(endpoint);
  }
  throw UsageError("unknown llm kind '" + std::string(kind) + "'");
}

}  // namespace tdpr
