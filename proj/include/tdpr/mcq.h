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

#ifndef TDPR_MCQ_H_
#define TDPR_MCQ_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdpr {

enum class Difficulty { kEasy, kIntermediate, kHard };

std::string_view DifficultyName(Difficulty d);
Difficulty ParseDifficulty(std::string_view name);  // throws DataError

struct MCQItem {
  std::string item_id;
  Difficulty difficulty = Difficulty::kEasy;
  std::string question;
  std::vector<std::string> options;  // 2..5
  int answer_index = 0;              // 0-based
  std::optional<std::string> gold_passage_id;
};

// MCQ JSONL, one item per line. Validates option count and answer range.
std::vector<MCQItem> ParseMcqItems(std::istream& in, std::string_view source);
std::vector<MCQItem> LoadMcqItems(const std::string& path);

struct McqPrediction {
  std::string item_id;
  std::optional<int> predicted_index;  // absent: errored or unparseable
};

struct McqGrade {
  double overall = 0.0;
  size_t n_items = 0;
  size_t n_correct = 0;
  // Absent when the difficulty has no items.
  std::map<Difficulty, std::optional<double>> per_difficulty;
};

// Exact index match. Every item needs exactly one prediction; missing,
// duplicate or unknown ids raise DataError listing them.
McqGrade GradeMcq(const std::vector<McqPrediction>& predictions,
                  const std::vector<MCQItem>& items);

}  // namespace tdpr

#endif  // TDPR_MCQ_H_
