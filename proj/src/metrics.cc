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

#include "tdpr/metrics.h"

#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "tdpr/error.h"

namespace tdpr {
namespace {

void CheckOutcomes(std::span<const RankOutcome> outcomes, int k) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (outcomes.empty()) throw DataError("no outcomes to evaluate");
}

nlohmann::ordered_json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}

std::string Percent(std::optional<double> v) {
  if (!v) return "   n/a";
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%6.1f", 100.0 * *v);
  return buf;
}

std::string Fixed(std::optional<double> v) {
  if (!v) return "   n/a";
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%6.3f", *v);
  return buf;
}

}  // namespace

std::optional<int> RankOfGold(const std::vector<std::string>& retrieved,
                              std::string_view gold) {
  std::unordered_set<std::string_view> seen;
  std::optional<int> rank;
  for (size_t i = 0; i < retrieved.size(); ++i) {
    if (!seen.insert(retrieved[i]).second) {
      throw DataError("duplicate id '" + retrieved[i] + "' in retrieved list");
    }
    if (!rank && retrieved[i] == gold) rank = static_cast<int>(i + 1);
  }
  return rank;
}

RankOutcome MakeRankOutcome(std::string query_id, std::string gold_passage_id,
                            const std::vector<RetrievalResult>& results) {
  RankOutcome o;
  o.query_id = std::move(query_id);
  o.gold_passage_id = std::move(gold_passage_id);
  for (const auto& r : results) o.retrieved_ids.push_back(r.passage_id);
  o.rank = RankOfGold(o.retrieved_ids, o.gold_passage_id);
  return o;
}

double TopKAccuracy(std::span<const RankOutcome> outcomes, int k) {
  CheckOutcomes(outcomes, k);
  size_t hits = 0;
  for (const auto& o : outcomes) {
    if (o.rank && *o.rank <= k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double MrrAtK(std::span<const RankOutcome> outcomes, int k) {
  CheckOutcomes(outcomes, k);
  double sum = 0.0;
  for (const auto& o : outcomes) {
    if (o.rank && *o.rank <= k) sum += 1.0 / static_cast<double>(*o.rank);
  }
  return sum / static_cast<double>(outcomes.size());
}

EvalReport EvaluateOutcomes(std::span<const RankOutcome> outcomes) {
  EvalReport report;
  for (int k : kAccuracyCutoffs) report.acc[k] = TopKAccuracy(outcomes, k);
  report.mrr_at_10 = MrrAtK(outcomes, kMrrCutoff);
  report.n_queries = outcomes.size();
  return report;
}

EvalReport EvaluateOutcomesByDifficulty(
    std::span<const RankOutcome> outcomes,
    const std::map<std::string, std::string>& difficulty) {
  EvalReport report = EvaluateOutcomes(outcomes);
  std::map<std::string, std::vector<RankOutcome>> groups;
  for (const char* level : {"easy", "intermediate", "hard"}) groups[level];
  for (const auto& o : outcomes) {
    auto it = difficulty.find(o.query_id);
    if (it == difficulty.end()) {
      throw DataError("no difficulty for query '" + o.query_id + "'");
    }
    auto g = groups.find(it->second);
    if (g == groups.end()) {
      throw DataError("unknown difficulty '" + it->second + "'");
    }
    g->second.push_back(o);
  }
  std::map<std::string, DifficultyMetrics> per;
  for (const auto& [level, group] : groups) {
    DifficultyMetrics m;
    m.n = group.size();
    if (!group.empty()) {
      m.accuracy = TopKAccuracy(group, kMrrCutoff);
      m.mrr = MrrAtK(group, kMrrCutoff);
    }
    per[level] = m;
  }
  report.per_difficulty = std::move(per);
  return report;
}

std::string EvalReportJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["acc"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.acc) j["acc"][std::to_string(k)] = v;
  j["mrr@10"] = report.mrr_at_10;
  j["n"] = report.n_queries;
  if (report.per_difficulty) {
    auto& pd = j["per_difficulty"];
    pd = nlohmann::ordered_json::object();
    for (const char* level : {"easy", "intermediate", "hard"}) {
      auto it = report.per_difficulty->find(level);
      if (it == report.per_difficulty->end() || it->second.n == 0) {
        pd[level] = nullptr;
        continue;
      }
      nlohmann::ordered_json m;
      m["acc@10"] = OptionalNumber(it->second.accuracy);
      m["mrr@10"] = OptionalNumber(it->second.mrr);
      m["n"] = it->second.n;
      pd[level] = std::move(m);
    }
  }
  return j.dump(2) + "\n";
}

std::string FormatEvalReport(const EvalReport& report,
                             std::string_view label) {
  std::ostringstream os;
  os << "retriever  n      Acc@1  Acc@3  Acc@5 Acc@10  MRR@10\n";
  char head[64];
  std::snprintf(head, sizeof(head), "%-10.10s %-6zu", std::string(label).c_str(),
                report.n_queries);
  os << head;
  for (int k : kAccuracyCutoffs) {
    auto it = report.acc.find(k);
    os << ' ' << Percent(it == report.acc.end() ? std::nullopt
                                                : std::optional(it->second));
  }
  os << "  " << Fixed(report.mrr_at_10) << '\n';
  if (report.per_difficulty) {
    os << "difficulty    n  Acc@10  MRR@10\n";
    for (const char* level : {"easy", "intermediate", "hard"}) {
      auto it = report.per_difficulty->find(level);
      const DifficultyMetrics m =
          it == report.per_difficulty->end() ? DifficultyMetrics{} : it->second;
      char line[64];
      std::snprintf(line, sizeof(line), "%-12s %3zu", level, m.n);
      os << line << ' ' << Percent(m.accuracy) << "  " << Fixed(m.mrr)
         << '\n';
    }
  }
  return os.str();
}

GroundingReport BuildGroundingReport(std::span<const McqResult> mcq_results,
                                     std::span<const RankOutcome> outcomes,
                                     int k) {
  if (k < 1) throw UsageError("k must be >= 1");
  std::unordered_map<std::string, const RankOutcome*> by_id;
  for (const auto& o : outcomes) {
    if (!by_id.emplace(o.query_id, &o).second) {
      throw DataError("duplicate outcome for '" + o.query_id + "'");
    }
  }
  if (by_id.size() != mcq_results.size()) {
    throw DataError("grounding needs one outcome per MCQ result (" +
                    std::to_string(by_id.size()) + " outcomes, " +
                    std::to_string(mcq_results.size()) + " results)");
  }
  GroundingReport g;
  std::set<std::string> seen;
  for (const auto& r : mcq_results) {
    auto it = by_id.find(r.item_id);
    if (it == by_id.end() || !seen.insert(r.item_id).second) {
      throw DataError("MCQ result '" + r.item_id +
                      "' has no matching retrieval outcome");
    }
    const bool grounded = it->second->rank && *it->second->rank <= k;
    if (r.correct) {
      ++(grounded ? g.correct_grounded : g.correct_ungrounded);
    } else {
      ++(grounded ? g.incorrect_grounded : g.incorrect_ungrounded);
    }
  }
  return g;
}

}  // namespace tdpr
