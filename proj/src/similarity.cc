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

#include "tdpr/similarity.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tdpr/error.h"

namespace tdpr {

SimilarityHistogram HistogramOfCosines(std::span<const double> cosines,
                                       int bins, std::string model_label) {
  if (bins < 2) throw UsageError("histogram needs at least 2 bins");
  SimilarityHistogram h;
  h.model_label = std::move(model_label);
  for (int i = 0; i <= bins; ++i) {
    h.bin_edges.push_back(-1.0 + 2.0 * static_cast<double>(i) / bins);
  }
  h.counts.assign(bins, 0);
  double sum = 0.0;
  for (double c : cosines) {
    auto bin = static_cast<long>(std::floor((c + 1.0) / 2.0 * bins));
    bin = std::clamp<long>(bin, 0, bins - 1);
    ++h.counts[bin];
    sum += c;
  }
  h.n = cosines.size();
  h.mean = h.n > 0 ? sum / static_cast<double>(h.n) : 0.0;
  return h;
}

SimilarityHistogram SimilarityDistribution(
    const std::vector<std::string>& questions,
    const std::vector<std::string>& passage_texts,
    const EmbeddingProvider& provider, const AdapterMatrix* adapter, int bins,
    std::string model_label) {
  if (questions.size() != passage_texts.size()) {
    throw DataError("questions and passages differ in length");
  }
  if (bins < 2) throw UsageError("histogram needs at least 2 bins");
  const auto q = Embed(provider, questions);
  const auto p = Embed(provider, passage_texts);
  std::vector<double> cosines;
  cosines.reserve(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (adapter != nullptr) {
      cosines.push_back(
          Cosine(ApplyAdapter(*adapter, q[i]), ApplyAdapter(*adapter, p[i])));
    } else {
      cosines.push_back(Cosine(q[i], p[i]));
    }
  }
  return HistogramOfCosines(cosines, bins, std::move(model_label));
}

std::string HistogramCsv(const SimilarityHistogram& histogram) {
  std::string out = "bin_start,bin_end,count\n";
  char line[96];
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.6f,%.6f,%zu\n",
                  histogram.bin_edges[i], histogram.bin_edges[i + 1],
                  histogram.counts[i]);
    out += line;
  }
  return out;
}

}  // namespace tdpr
