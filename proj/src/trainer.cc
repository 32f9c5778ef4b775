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

#include "tdpr/trainer.h"

#include <cmath>
#include <random>
#include <unordered_map>

#include "tdpr/error.h"
#include "tdpr/mnr_loss.h"
#include "tdpr/retriever.h"

namespace tdpr {
namespace {

// std::mt19937_64's output sequence is fixed by the standard; the
// distributions in <random> are not, so both helpers below are explicit.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void Shuffle(std::vector<size_t>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = rng() % i;
    std::swap(v[i - 1], v[j]);
  }
}

void ValidateConfig(const TrainConfig& config, size_t n_pairs) {
  if (config.batch_size < 2) {
    throw UsageError("batch_size must be >= 2 (in-batch negatives)");
  }
  if (config.epochs < 1) throw UsageError("epochs must be >= 1");
  if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
    throw UsageError("learning_rate must be finite and >= 0");
  }
  if (!(config.scale > 0.0) || !std::isfinite(config.scale)) throw UsageError("scale must be > 0");
  if (n_pairs < static_cast<size_t>(config.batch_size)) {
    throw UsageError("need at least batch_size (" +
                     std::to_string(config.batch_size) +
                     ") training pairs, got " + std::to_string(n_pairs));
  }
}

// Forward through normalize(W x) for a batch; keeps what backward needs.
struct AdaptedBatch {
  std::vector<double> out;    // n x rows, unit rows
  std::vector<double> norms;  // |W x| per row
};

AdaptedBatch Forward(const AdapterMatrix& w,
                     const std::vector<const EmbeddingVector*>& inputs) {
  AdaptedBatch b;
  b.out.reserve(inputs.size() * w.rows());
  for (const auto* x : inputs) {
    auto u = w.Project(x->values());
    double sq = 0.0;
    for (double v : u) sq += v * v;
    const double norm = std::sqrt(sq);
    if (norm < 1e-12) {
      throw NumericError("adapter collapsed an input to zero");
    }
    for (double& v : u) v /= norm;
    b.out.insert(b.out.end(), u.begin(), u.end());
    b.norms.push_back(norm);
  }
  return b;
}

// grad_w += J_normalize^T g  x^T for every row.
void Backward(const AdaptedBatch& b, std::span<const double> grad_out,
              const std::vector<const EmbeddingVector*>& inputs,
              AdapterMatrix& grad_w) {
  const size_t rows = grad_w.rows();
  const size_t cols = grad_w.cols();
  std::vector<double> gu(rows);
  for (size_t i = 0; i < inputs.size(); ++i) {
    const double* a = &b.out[i * rows];
    const double* g = &grad_out[i * rows];
    double ag = 0.0;
    for (size_t r = 0; r < rows; ++r) ag += a[r] * g[r];
    for (size_t r = 0; r < rows; ++r) gu[r] = (g[r] - ag * a[r]) / b.norms[i];
    const auto x = inputs[i]->values();
    for (size_t r = 0; r < rows; ++r) {
      if (gu[r] == 0.0) continue;
      for (size_t c = 0; c < cols; ++c) grad_w.at(r, c) += gu[r] * x[c];
    }
  }
}

}  // namespace

TrainResult TrainAdapterOnEmbeddings(
    const std::vector<EmbeddingVector>& questions,
    const std::vector<EmbeddingVector>& positives, const TrainConfig& config) {
  if (questions.size() != positives.size()) {
    throw DataError("questions and positives differ in length");
  }
  ValidateConfig(config, questions.size());
  const size_t dim = questions.front().dim();
  for (const auto& v : questions) {
    if (v.dim() != dim) throw DataError("mixed question embedding dims");
  }
  for (const auto& v : positives) {
    if (v.dim() != dim) throw DataError("mixed passage embedding dims");
  }

  std::mt19937_64 rng(config.seed);
  TrainResult result{AdapterMatrix::Identity(dim), {}};
  for (double& w : result.adapter.mutable_weights()) {
    w += -0.01 + 0.02 * Uniform01(rng);
  }

  std::vector<size_t> order(questions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  const size_t batch = static_cast<size_t>(config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Shuffle(order, rng);
    double loss_sum = 0.0;
    int n_batches = 0;
    for (size_t start = 0; start + 1 < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      const size_t n = end - start;
      std::vector<const EmbeddingVector*> q, p;
      for (size_t i = start; i < end; ++i) {
        q.push_back(&questions[order[i]]);
        p.push_back(&positives[order[i]]);
      }
      const auto fa = Forward(result.adapter, q);
      const auto fp = Forward(result.adapter, p);
      const size_t rows = result.adapter.rows();
      std::vector<double> ga(n * rows), gp(n * rows);
      const double loss = MnrLossAndGradient(fa.out, fp.out, n, rows,
                                             config.scale, ga, gp);
      if (!std::isfinite(loss)) {
        throw NumericError("non-finite loss at epoch " +
                           std::to_string(epoch + 1) + ", batch " +
                           std::to_string(n_batches + 1));
      }
      loss_sum += loss;
      ++n_batches;
      AdapterMatrix grad(rows, dim);
      Backward(fa, ga, q, grad);
      Backward(fp, gp, p, grad);
      auto w = result.adapter.mutable_weights();
      const auto g = grad.weights();
      for (size_t i = 0; i < w.size(); ++i) w[i] -= config.learning_rate * g[i];
    }
    result.loss_history.push_back(loss_sum / n_batches);
  }
  return result;
}

TrainResult TrainAdapter(const std::vector<TrainingPair>& pairs,
                         const Corpus& corpus,
                         const EmbeddingProvider& provider,
                         const TrainConfig& config,
                         const EmbedOptions& options) {
  ValidateConfig(config, pairs.size());
  std::vector<std::string> question_texts;
  std::vector<std::string> passage_texts;
  std::unordered_map<std::string, size_t> passage_slot;
  std::vector<size_t> positive_slot;
  for (const auto& pair : pairs) {
    question_texts.push_back(pair.question_text);
    auto [it, inserted] =
        passage_slot.emplace(pair.positive_passage_id, passage_texts.size());
    if (inserted) {
      passage_texts.push_back(
          PassageRepresentation(corpus.passage(pair.positive_passage_id)));
    }
    positive_slot.push_back(it->second);
  }
  const auto questions = Embed(provider, question_texts, options);
  const auto passages = Embed(provider, passage_texts, options);
  std::vector<EmbeddingVector> positives;
  positives.reserve(pairs.size());
  for (size_t slot : positive_slot) positives.push_back(passages[slot]);
  return TrainAdapterOnEmbeddings(questions, positives, config);
}

}  // namespace tdpr
