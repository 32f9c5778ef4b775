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

#ifndef TDPR_PROMPTS_H_
#define TDPR_PROMPTS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdpr {

// Prompt templates are versioned assets: changing any byte here changes
// every mock-LLM artifact, so bump kPromptVersion alongside.
inline constexpr std::string_view kPromptVersion = "tdpr-prompts-v1";

inline constexpr std::string_view kTableSummaryInstruction =
    "Summarize the following table from a telecommunication technical "
    "specification in two or three sentences, naming what its columns "
    "describe.";
inline constexpr std::string_view kMcqInstruction =
    "Answer the following multiple-choice question about telecommunication "
    "technical specifications, using the context when it is relevant.";
inline constexpr std::string_view kMcqDirective = "Answer with the letter only.";
inline constexpr std::string_view kQaGenerationInstruction =
    "Write question-answer pairs that can be answered from the passage of a "
    "telecommunication technical specification below.";
inline constexpr std::string_view kOpenAnswerInstruction =
    "Answer the question about telecommunication technical specifications "
    "using the context.";

std::string BuildTableSummaryPrompt(std::string_view caption,
                                    std::string_view markdown);

// Lettered options "A. ...", "B. ..."; empty context keeps the empty block.
std::string BuildMcqPrompt(std::string_view question,
                           const std::vector<std::string>& options,
                           std::string_view context);

// Table markdown, when present, is appended as its own block.
std::string BuildQaGenerationPrompt(std::string_view passage_text,
                                    std::optional<std::string_view> table,
                                    int max_questions);

std::string BuildOpenAnswerPrompt(std::string_view question,
                                  std::string_view context);

// Header-row cell texts of a Markdown table, trimmed, edge cells dropped.
std::vector<std::string> MarkdownHeaderCells(std::string_view markdown);

// caption, a U+2014 dash, "columns: " and the comma-joined cells. The caption
// part is omitted when empty.
std::string RuleBasedTableSummary(std::string_view caption,
                                  std::string_view markdown);

}  // namespace tdpr

#endif  // TDPR_PROMPTS_H_
