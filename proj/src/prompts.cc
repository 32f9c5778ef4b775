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

#include "tdpr/prompts.h"

#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

std::string OneLine(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string BuildTableSummaryPrompt(std::string_view caption,
                                    std::string_view markdown) {
  std::string p(kTableSummaryInstruction);
  p += "\nCaption: ";
  p += OneLine(caption);
  p += "\nTable:\n";
  p += markdown;
  return p;
}

std::string BuildMcqPrompt(std::string_view question,
                           const std::vector<std::string>& options,
                           std::string_view context) {
  std::string p(kMcqInstruction);
  p += "\nContext:\n<<<\n";
  p += context;
  p += "\n>>>\nQuestion: ";
  p += question;
  p += '\n';
  for (size_t i = 0; i < options.size(); ++i) {
    p += static_cast<char>('A' + i);
    p += ". ";
    p += options[i];
    p += '\n';
  }
  p += kMcqDirective;
  return p;
}

std::string BuildQaGenerationPrompt(std::string_view passage_text,
                                    std::optional<std::string_view> table,
                                    int max_questions) {
  std::string p(kQaGenerationInstruction);
  p += "\nWrite between 1 and " + std::to_string(max_questions) +
       " pairs. Number them and use exactly this format:\n"
       "Q1: <question>\nA1: <answer>\n"
       "Passage:\n<<<\n";
  p += passage_text;
  p += "\n>>>";
  if (table) {
    p += "\nTable:\n<<<\n";
    p += *table;
    p += "\n>>>";
  }
  return p;
}

std::string BuildOpenAnswerPrompt(std::string_view question,
                                  std::string_view context) {
  std::string p(kOpenAnswerInstruction);
  p += "\nContext:\n<<<\n";
  p += context;
  p += "\n>>>\nQuestion: ";
  p += question;
  p += "\nAnswer:";
  return p;
}

std::vector<std::string> MarkdownHeaderCells(std::string_view markdown) {
  const auto nl = markdown.find('\n');
  std::string_view header = Trim(markdown.substr(0, nl));
  if (!header.empty() && header.front() == '|') header.remove_prefix(1);
  if (!header.empty() && header.back() == '|') header.remove_suffix(1);
  std::vector<std::string> cells;
  size_t start = 0;
  while (start <= header.size()) {
    auto bar = header.find('|', start);
    if (bar == std::string_view::npos) bar = header.size();
    const auto cell = Trim(header.substr(start, bar - start));
    if (!cell.empty()) cells.emplace_back(cell);
    start = bar + 1;
  }
  return cells;
}

std::string RuleBasedTableSummary(std::string_view caption,
                                  std::string_view markdown) {
  std::string out;
  const auto cap = Trim(caption);
  if (!cap.empty()) {
    out += OneLine(cap);
    out += ' ';
  }
  out += "\xE2\x80\x94 columns: ";  // U+2014
  const auto cells = MarkdownHeaderCells(markdown);
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ", ";
    out += cells[i];
  }
  return out;
}

}  // namespace tdpr
