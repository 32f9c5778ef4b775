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

#ifndef TDPR_METRICS_H_
#define TDPR_METRICS_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/retrieval_result.h"

namespace tdpr {

// Cutoffs reported for Top-K accuracy.
inline constexpr std::array<int, 4> kAccuracyCutoffs = {1, 3, 5, 10};
inline constexpr int kMrrCutoff = 10;

struct RankOutcome {
  std::string query_id;
  std::string gold_passage_id;
  std::vector<std::string> retrieved_ids;
  std::optional<int> rank;  // 1-based position of the gold passage
};

// 1-based position of `gold` in `retrieved`, or nullopt. Throws DataError
// if `retrieved` contains duplicates.
std::optional<int> RankOfGold(const std::vector<std::string>& retrieved,
                              std::string_view gold);

RankOutcome MakeRankOutcome(std::string query_id, std::string gold_passage_id,
                            const std::vector<RetrievalResult>& results);

// Fraction of outcomes whose gold rank is <= k. Throws UsageError for k < 1
// and DataError for an empty outcome list.
double TopKAccuracy(std::span<const RankOutcome> outcomes, int k);

// Mean of 1/rank over outcomes, counting 0 when the rank is absent or > k.
double MrrAtK(std::span<const RankOutcome> outcomes, int k);

struct DifficultyMetrics {
  size_t n = 0;
  std::optional<double> accuracy;  // Acc@10, absent when n == 0
  std::optional<double> mrr;       // MRR@10, absent when n == 0
};

struct EvalReport {
  std::map<int, double> acc;
  double mrr_at_10 = 0.0;
  size_t n_queries = 0;
  // Keys "easy", "intermediate", "hard" when difficulties are known.
  std::optional<std::map<std::string, DifficultyMetrics>> per_difficulty;
};

EvalReport EvaluateOutcomes(std::span<const RankOutcome> outcomes);

// As EvaluateOutcomes, plus per-difficulty Acc@10/MRR@10. `difficulty`
// maps query_id to "easy" | "intermediate" | "hard".
EvalReport EvaluateOutcomesByDifficulty(
    std::span<const RankOutcome> outcomes,
    const std::map<std::string, std::string>& difficulty);

// {"acc":{"1":..,"3":..,"5":..,"10":..},"mrr@10":..,"n":..,
//  "per_difficulty":{...}} with a trailing newline.
std::string EvalReportJson(const EvalReport& report);

// Fixed-width table for terminals.
std::string FormatEvalReport(const EvalReport& report, std::string_view label);

struct GroundingReport {
  size_t correct_grounded = 0;
  size_t correct_ungrounded = 0;
  size_t incorrect_grounded = 0;
  size_t incorrect_ungrounded = 0;

  size_t total() const {
    return correct_grounded + correct_ungrounded + incorrect_grounded +
           incorrect_ungrounded;
  }
  size_t total_correct() const { return correct_grounded + correct_ungrounded; }
  bool operator==(const GroundingReport&) const = default;
};

struct McqResult {
  std::string item_id;
  bool correct = false;
};

// Contingency of answer correctness against whether the gold passage was in
// the top-k context. Throws DataError when the two id sets differ.
GroundingReport BuildGroundingReport(std::span<const McqResult> mcq_results,
                                     std::span<const RankOutcome> outcomes,
                                     int k);

}  // namespace tdpr

#endif  // TDPR_METRICS_H_
