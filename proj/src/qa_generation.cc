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

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "tdpr/error.h"
#include "tdpr/hash.h"
#include "tdpr/prompts.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

const std::set<std::string>& StopWords() {
  static const std::set<std::string> kWords = {
      "a",    "an",   "and",  "are",   "as",  "at",    "be",   "by",
      "can",  "do",   "does", "for",   "from", "has",  "have", "how",
      "in",   "is",   "it",   "its",   "of",  "on",    "or",   "that",
      "the",  "this", "to",   "was",   "what", "when", "where", "which",
      "who",  "why",  "with", "were",  "will"};
  return kWords;
}

std::set<std::string> ContentTerms(std::string_view text) {
  std::set<std::string> out;
  for (auto& t : AnalyzeTerms(text)) {
    if (!StopWords().contains(t)) out.insert(std::move(t));
  }
  return out;
}

std::string Fold(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(b, e - b + 1));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Split SplitFor(std::string_view question_id, const QaGenerationOptions& o) {
  const uint64_t h = Fnv1a64(question_id, kFnvOffsetBasis ^ o.seed);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < o.test_fraction ? Split::kTest : Split::kTrain;
}

}  // namespace

std::string_view SplitName(Split split) {
  return split == Split::kTest ? "test" : "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw DataError("unknown split '" + std::string(name) + "'");
}

std::vector<QAPair> ParseQaPairs(std::istream& in, std::string_view source,
                                 const Corpus* corpus) {
  std::vector<QAPair> pairs;
  std::unordered_set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      QAPair p;
      p.question_id = j.at("question_id").get<std::string>();
      p.question = j.at("question").get<std::string>();
      p.answer = j.contains("answer") && !j.at("answer").is_null()
                     ? j.at("answer").get<std::string>()
                     : "";
      p.passage_id = j.at("passage_id").get<std::string>();
      p.split = ParseSplit(j.at("split").get<std::string>());
      if (!ids.insert(p.question_id).second) {
        throw DataError("duplicate question_id '" + p.question_id + "'");
      }
      if (corpus != nullptr && corpus->FindPassage(p.passage_id) == nullptr) {
        throw DataError("question '" + p.question_id +
                        "' references unknown passage '" + p.passage_id + "'");
      }
      pairs.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + "malformed QA pair: " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return pairs;
}

std::vector<QAPair> LoadQaPairs(const std::string& path,
                                const Corpus* corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open QA file '" + path + "'");
  return ParseQaPairs(in, path, corpus);
}

void WriteQaPairs(const std::vector<QAPair>& pairs, std::ostream& out) {
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["question_id"] = p.question_id;
    j["question"] = p.question;
    j["answer"] = p.answer;
    j["passage_id"] = p.passage_id;
    j["split"] = SplitName(p.split);
    out << j.dump() << '\n';
  }
}

QaGenerationResult GenerateQaPairs(const Passage& passage,
                                   const Corpus& corpus, LLMClient& llm,
                                   const QaGenerationOptions& options) {
  if (options.max_questions < 1 || options.max_questions > 5) {
    throw UsageError("max_questions must be between 1 and 5");
  }
  std::optional<std::string_view> table;
  if (passage.kind == PassageKind::kTableCaption && passage.table_id) {
    table = corpus.table(*passage.table_id).markdown;
  }
  const std::string reply = llm.Generate(
      BuildQaGenerationPrompt(passage.text, table, options.max_questions),
      options.max_tokens);

  QaGenerationResult result;
  static const std::regex kQuestion(R"(^\s*Q(\d+)\s*[:.]\s*(.*\S)\s*$)");
  static const std::regex kAnswer(R"(^\s*A(\d+)\s*[:.]\s*(.*\S)\s*$)");
  std::vector<std::string> lines;
  {
    size_t start = 0;
    while (start <= reply.size()) {
      auto nl = reply.find('\n', start);
      if (nl == std::string::npos) nl = reply.size();
      lines.push_back(reply.substr(start, nl - start));
      start = nl + 1;
    }
  }
  for (size_t i = 0; i < lines.size(); ++i) {
    std::smatch q;
    if (!std::regex_match(lines[i], q, kQuestion)) {
      if (lines[i].find_first_not_of(" \t\r") != std::string::npos &&
          !std::regex_match(lines[i], kAnswer)) {
        result.warnings.push_back(passage.passage_id +
                                  ": skipped unparseable line '" + lines[i] +
                                  "'");
      }
      continue;
    }
    std::smatch a;
    if (i + 1 >= lines.size() || !std::regex_match(lines[i + 1], a, kAnswer) ||
        a[1].str() != q[1].str()) {
      result.warnings.push_back(passage.passage_id + ": question " +
                                q[1].str() + " has no matching answer");
      continue;
    }
    ++i;
    if (static_cast<int>(result.pairs.size()) >= options.max_questions) {
      continue;
    }
    QAPair pair;
    pair.question_id = passage.passage_id + "#q" +
                       std::to_string(result.pairs.size() + 1);
    pair.question = q[2].str();
    pair.answer = a[2].str();
    pair.passage_id = passage.passage_id;
    pair.split = SplitFor(pair.question_id, options);
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

std::vector<QAPair> FilterQaPairs(const std::vector<QAPair>& pairs,
                                  const Corpus& corpus) {
  std::vector<QAPair> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : pairs) {
    const int q_tokens = CountTokens(p.question);
    if (q_tokens < 5 || q_tokens > 64) continue;
    const Passage* passage = corpus.FindPassage(p.passage_id);
    if (passage == nullptr) continue;
    std::string source = passage->text;
    if (passage->kind == PassageKind::kTableCaption && passage->table_id) {
      if (const auto* t = corpus.FindTable(*passage->table_id)) {
        source += '\n';
        source += t->markdown;
      }
    }
    const auto passage_terms = ContentTerms(source);
    bool overlap = false;
    for (const auto& t : ContentTerms(p.answer)) {
      if (passage_terms.contains(t)) {
        overlap = true;
        break;
      }
    }
    if (!overlap) continue;
    if (!seen.insert(Fold(p.question)).second) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<TrainingPair> TrainingPairsFor(const std::vector<QAPair>& pairs,
                                           Split split) {
  std::vector<TrainingPair> out;
  for (const auto& p : pairs) {
    if (p.split == split) {
      out.push_back({p.question_id, p.question, p.passage_id});
    }
  }
  return out;
}

}  // namespace tdpr
