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

#ifndef TDPR_TRAINER_H_
#define TDPR_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tdpr/adapter.h"
#include "tdpr/corpus.h"
#include "tdpr/embedding.h"

namespace tdpr {

struct TrainingPair {
  std::string question_id;
  std::string question_text;
  std::string positive_passage_id;
};

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 10;
  int batch_size = 32;
  double scale = 20.0;
  uint64_t seed = 42;
};

struct TrainResult {
  AdapterMatrix adapter;
  std::vector<double> loss_history;  // mean batch loss per epoch
};

// Trains a square linear adapter over frozen provider embeddings with the
// MNR loss. Questions are anchors, passage representations are positives,
// both mapped through normalize(W x).
//
// W starts at identity plus seeded uniform(-0.01, 0.01) noise. Each epoch
// shuffles the pairs with the seeded generator, walks them in batches
// (a trailing batch of one pair is skipped) and takes a plain gradient step
// W -= lr * dL/dW per batch. Fully deterministic for a given seed.
//
// Throws UsageError when batch_size < 2, epochs < 1, lr < 0, scale <= 0,
// lr or scale is non-finite, or there are fewer pairs than batch_size;
// NumericError on a non-finite loss.
TrainResult TrainAdapter(const std::vector<TrainingPair>& pairs,
                         const Corpus& corpus,
                         const EmbeddingProvider& provider,
                         const TrainConfig& config,
                         const EmbedOptions& options = {});

// Same procedure on precomputed unit embeddings (questions[i] pairs with
// positives[i]).
TrainResult TrainAdapterOnEmbeddings(
    const std::vector<EmbeddingVector>& questions,
    const std::vector<EmbeddingVector>& positives, const TrainConfig& config);

}  // namespace tdpr

#endif  // TDPR_TRAINER_H_
