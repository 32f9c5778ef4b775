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

#ifndef TDPR_EMBEDDING_H_
#define TDPR_EMBEDDING_H_

#include <cstddef>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/splitter.h"

namespace tdpr {

// A dense vector. Values are kept in double precision; vectors produced by
// Embed() and stored in indexes are unit-norm.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}

  // Scales to unit L2 norm. Throws DataError on a zero or non-finite vector.
  static EmbeddingVector Normalized(std::vector<double> values);

  size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](size_t i) const { return values_[i]; }
  double norm() const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

// Dot product of two unit vectors. Throws DataError on dimension mismatch.
double Cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Source of embeddings. EmbedBatch may be called from several threads at
// once and must return one vector per input text.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Output dimension, or 0 while still unknown (HTTP before first reply).
  virtual int dim() const = 0;
  virtual std::vector<std::vector<double>> EmbedBatch(
      const std::vector<std::string>& texts) const = 0;
  virtual std::string name() const = 0;
};

// Deterministic offline provider: signed feature hashing of analyzed terms.
//
// Each term adds +1 or -1 (from a second FNV-1a hash) to bucket
// FNV-1a(term) mod dim; the result is L2-normalized. Text without terms, or
// whose contributions cancel, maps to the basis vector e0.
class HashEmbedder : public EmbeddingProvider {
 public:
  explicit HashEmbedder(int dim);

  static EmbeddingVector EmbedText(std::string_view text, int dim);

  int dim() const override { return dim_; }
  std::vector<std::vector<double>> EmbedBatch(
      const std::vector<std::string>& texts) const override;
  std::string name() const override;

 private:
  int dim_;
};

// POST {endpoint}/embed {"texts":[...]} -> {"dim":N,"vectors":[[...]]}.
// A reply whose dim disagrees with the configured or first-seen dimension
// is a provider error.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(std::string endpoint, int expected_dim = 0,
                        int timeout_seconds = 60);

  int dim() const override;
  std::vector<std::vector<double>> EmbedBatch(
      const std::vector<std::string>& texts) const override;
  std::string name() const override { return "http:" + endpoint_; }

 private:
  std::string endpoint_;
  int timeout_seconds_;
  mutable std::mutex mu_;
  mutable int dim_;
};

struct EmbedOptions {
  size_t batch_size = 64;
  int max_in_flight = 4;
};

// Embeds `texts` in provider batches, preserving order, and normalizes every
// output. Provider failures surface as ProviderError with the batch range.
std::vector<EmbeddingVector> Embed(const EmbeddingProvider& provider,
                                   const std::vector<std::string>& texts,
                                   const EmbedOptions& options = {});

EmbeddingVector EmbedOne(const EmbeddingProvider& provider,
                         const std::string& text);

// Sentence similarity for the splitter: cosine of provider embeddings.
SentenceSimilarity MakeEmbeddingSimilarity(const EmbeddingProvider& provider);

}  // namespace tdpr

#endif  // TDPR_EMBEDDING_H_
