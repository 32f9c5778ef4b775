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

#include "tdpr/mcq.h"

#include <fstream>
#include <istream>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "tdpr/error.h"

namespace tdpr {

std::string_view DifficultyName(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy:
      return "easy";
    case Difficulty::kIntermediate:
      return "intermediate";
    case Difficulty::kHard:
      return "hard";
  }
  return "easy";
}

Difficulty ParseDifficulty(std::string_view name) {
  if (name == "easy") return Difficulty::kEasy;
  if (name == "intermediate") return Difficulty::kIntermediate;
  if (name == "hard") return Difficulty::kHard;
  throw DataError("unknown difficulty '" + std::string(name) + "'");
}

std::vector<MCQItem> ParseMcqItems(std::istream& in, std::string_view source) {
  std::vector<MCQItem> items;
  std::set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      MCQItem item;
      item.item_id = j.at("item_id").get<std::string>();
      item.difficulty = ParseDifficulty(j.at("difficulty").get<std::string>());
      item.question = j.at("question").get<std::string>();
      item.options = j.at("options").get<std::vector<std::string>>();
      item.answer_index = j.at("answer_index").get<int>();
      if (j.contains("gold_passage_id") && !j.at("gold_passage_id").is_null()) {
        item.gold_passage_id = j.at("gold_passage_id").get<std::string>();
      }
      if (item.options.size() < 2 || item.options.size() > 5) {
        throw DataError("item '" + item.item_id + "' needs 2 to 5 options");
      }
      if (item.answer_index < 0 ||
          item.answer_index >= static_cast<int>(item.options.size())) {
        throw DataError("item '" + item.item_id +
                        "' answer_index out of range");
      }
      if (!ids.insert(item.item_id).second) {
        throw DataError("duplicate item_id '" + item.item_id + "'");
      }
      items.push_back(std::move(item));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + "malformed MCQ item: " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return items;
}

std::vector<MCQItem> LoadMcqItems(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open MCQ file '" + path + "'");
  return ParseMcqItems(in, path);
}

McqGrade GradeMcq(const std::vector<McqPrediction>& predictions,
                  const std::vector<MCQItem>& items) {
  std::unordered_map<std::string, const MCQItem*> by_id;
  for (const auto& item : items) by_id[item.item_id] = &item;

  std::unordered_map<std::string, std::optional<int>> predicted;
  std::vector<std::string> duplicates, unknown, missing;
  for (const auto& p : predictions) {
    if (!by_id.contains(p.item_id)) {
      unknown.push_back(p.item_id);
    } else if (!predicted.emplace(p.item_id, p.predicted_index).second) {
      duplicates.push_back(p.item_id);
    }
  }
  for (const auto& item : items) {
    if (!predicted.contains(item.item_id)) missing.push_back(item.item_id);
  }
  if (!duplicates.empty() || !unknown.empty() || !missing.empty()) {
    std::string msg = "MCQ predictions do not match items:";
    const auto list = [&msg](const char* what,
                             const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      msg += std::string(" ") + what + " [";
      for (size_t i = 0; i < ids.size(); ++i) {
        msg += (i ? ", " : "") + ids[i];
      }
      msg += "]";
    };
    list("missing", missing);
    list("duplicate", duplicates);
    list("unknown", unknown);
    throw DataError(msg);
  }
  if (items.empty()) throw DataError("no MCQ items to grade");

  McqGrade grade;
  grade.n_items = items.size();
  std::map<Difficulty, std::pair<size_t, size_t>> tally;  // correct, total
  for (const auto& item : items) {
    const auto& p = predicted.at(item.item_id);
    const bool correct = p && *p == item.answer_index;
    auto& t = tally[item.difficulty];
    ++t.second;
    if (correct) {
      ++t.first;
      ++grade.n_correct;
    }
  }
  grade.overall = static_cast<double>(grade.n_correct) /
                  static_cast<double>(grade.n_items);
  for (Difficulty d :
       {Difficulty::kEasy, Difficulty::kIntermediate, Difficulty::kHard}) {
    auto it = tally.find(d);
    if (it == tally.end()) {
      grade.per_difficulty[d] = std::nullopt;
    } else {
      grade.per_difficulty[d] = static_cast<double>(it->second.first) /
                                static_cast<double>(it->second.second);
    }
  }
  return grade;
}

}  // namespace tdpr
