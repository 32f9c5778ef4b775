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

#ifndef TDPR_RETRIEVAL_RESULT_H_
#define TDPR_RETRIEVAL_RESULT_H_

#include <string>
#include <vector>

namespace tdpr {

// One ranked hit. Within a result list ranks run 1..n and scores never
// increase with rank; equal scores are ordered by ascending passage_id.
struct RetrievalResult {
  std::string passage_id;
  std::string doc_id;
  double score = 0.0;
  int rank = 0;

  bool operator==(const RetrievalResult&) const = default;
};

// (score desc, id asc)
inline bool RanksBefore(double score_a, const std::string& id_a,
                        double score_b, const std::string& id_b) {
  if (score_a != score_b) return score_a > score_b;
  return id_a < id_b;
}

}  // namespace tdpr

#endif  // TDPR_RETRIEVAL_RESULT_H_
