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

#ifndef TDPR_SIMILARITY_H_
#define TDPR_SIMILARITY_H_

#include <span>
#include <string>
#include <vector>

#include "tdpr/adapter.h"
#include "tdpr/embedding.h"

namespace tdpr {

// Counts of cosine values over `bins` uniform bins on [-1, 1]; the value 1
// lands in the last bin.
struct SimilarityHistogram {
  std::vector<double> bin_edges;  // bins + 1 edges
  std::vector<size_t> counts;
  std::string model_label;
  double mean = 0.0;
  size_t n = 0;
};

SimilarityHistogram HistogramOfCosines(std::span<const double> cosines,
                                       int bins, std::string model_label);

// cos(embed(question_i), embed(passage_text_i)), through `adapter` when
// given. `passage_texts` are passage representations.
SimilarityHistogram SimilarityDistribution(
    const std::vector<std::string>& questions,
    const std::vector<std::string>& passage_texts,
    const EmbeddingProvider& provider, const AdapterMatrix* adapter, int bins,
    std::string model_label);

// "bin_start,bin_end,count" rows.
std::string HistogramCsv(const SimilarityHistogram& histogram);

}  // namespace tdpr

#endif  // TDPR_SIMILARITY_H_
