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

#include "tdpr/mnr_loss.h"

#include <algorithm>
#include <cmath>

#include "tdpr/error.h"

namespace tdpr {
namespace {

void Flatten(std::span<const EmbeddingVector> rows, size_t dim,
             std::vector<double>& out) {
  out.clear();
  out.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.dim() != dim) {
      throw DataError("MNR batch mixes dims " + std::to_string(dim) +
                      " and " + std::to_string(r.dim()));
    }
    out.insert(out.end(), r.values().begin(), r.values().end());
  }
}

size_t CheckBatch(std::span<const EmbeddingVector> anchors,
                  std::span<const EmbeddingVector> positives) {
  if (anchors.size() != positives.size()) {
    throw DataError("MNR batch has " + std::to_string(anchors.size()) +
                    " anchors but " + std::to_string(positives.size()) +
                    " positives");
  }
  if (anchors.empty()) throw DataError("MNR batch is empty");
  return anchors.front().dim();
}

std::vector<std::vector<double>> Unflatten(const std::vector<double>& flat,
                                           size_t n, size_t dim) {
  std::vector<std::vector<double>> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i].assign(flat.begin() + i * dim, flat.begin() + (i + 1) * dim);
  }
  return out;
}

}  // namespace

double MnrLossAndGradient(std::span<const double> anchors,
                          std::span<const double> positives, size_t n,
                          size_t dim, double scale,
                          std::span<double> grad_anchors,
                          std::span<double> grad_positives) {
  // logits[i][j] = scale * a_i . p_j
  std::vector<double> logits(n * n);
  for (size_t i = 0; i < n; ++i) {
    const double* a = &anchors[i * dim];
    for (size_t j = 0; j < n; ++j) {
      const double* p = &positives[j * dim];
      double dot = 0.0;
      for (size_t d = 0; d < dim; ++d) dot += a[d] * p[d];
      logits[i * n + j] = scale * dot;
    }
  }
  const bool backward = !grad_anchors.empty() || !grad_positives.empty();
  // After this loop `logits` holds dL/dlogits when backward is requested.
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double* row = &logits[i * n];
    const double m = *std::max_element(row, row + n);
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) sum += std::exp(row[j] - m);
    const double lse = m + std::log(sum);
    total += lse - row[i];
    if (backward) {
      for (size_t j = 0; j < n; ++j) {
        const double prob = std::exp(row[j] - lse);
        row[j] = (prob - (i == j ? 1.0 : 0.0)) / static_cast<double>(n);
      }
    }
  }
  if (backward) {
    std::fill(grad_anchors.begin(), grad_anchors.end(), 0.0);
    std::fill(grad_positives.begin(), grad_positives.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const double g = scale * logits[i * n + j];
        if (g == 0.0) continue;
        for (size_t d = 0; d < dim; ++d) {
          grad_anchors[i * dim + d] += g * positives[j * dim + d];
          grad_positives[j * dim + d] += g * anchors[i * dim + d];
        }
      }
    }
  }
  return total / static_cast<double>(n);
}

double MnrLoss(std::span<const EmbeddingVector> anchors,
               std::span<const EmbeddingVector> positives, double scale) {
  const size_t dim = CheckBatch(anchors, positives);
  std::vector<double> a, p;
  Flatten(anchors, dim, a);
  Flatten(positives, dim, p);
  return MnrLossAndGradient(a, p, anchors.size(), dim, scale, {}, {});
}

MnrGradients MnrGradient(std::span<const EmbeddingVector> anchors,
                         std::span<const EmbeddingVector> positives,
                         double scale) {
  const size_t dim = CheckBatch(anchors, positives);
  const size_t n = anchors.size();
  std::vector<double> a, p;
  Flatten(anchors, dim, a);
  Flatten(positives, dim, p);
  std::vector<double> ga(n * dim), gp(n * dim);
  MnrLossAndGradient(a, p, n, dim, scale, ga, gp);
  return {Unflatten(ga, n, dim), Unflatten(gp, n, dim)};
}

}  // namespace tdpr
