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

#ifndef TDPR_MNR_LOSS_H_
#define TDPR_MNR_LOSS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "tdpr/embedding.h"

namespace tdpr {

// Multiple Negatives Ranking loss over a batch of (anchor, positive) pairs,
// every other positive in the batch acting as a negative for an anchor:
//
//   loss = (1/n) sum_i [ logsumexp_j(s * a_i.p_j) - s * a_i.p_i ]
//
// Inputs are used as given: cos is the plain dot product, so callers pass
// unit vectors. Throws DataError on length or dimension mismatch.
double MnrLoss(std::span<const EmbeddingVector> anchors,
               std::span<const EmbeddingVector> positives, double scale);

struct MnrGradients {
  std::vector<std::vector<double>> anchors;
  std::vector<std::vector<double>> positives;
};

// Exact gradient of MnrLoss with respect to every anchor and positive
// component.
MnrGradients MnrGradient(std::span<const EmbeddingVector> anchors,
                         std::span<const EmbeddingVector> positives,
                         double scale);

// Row-major core shared by the public functions and the trainer. `anchors`
// and `positives` hold n rows of `dim` values. Gradient spans may be empty
// to skip the backward pass; otherwise they are overwritten.
double MnrLossAndGradient(std::span<const double> anchors,
                          std::span<const double> positives, size_t n,
                          size_t dim, double scale,
                          std::span<double> grad_anchors,
                          std::span<double> grad_positives);

}  // namespace tdpr

#endif  // TDPR_MNR_LOSS_H_
