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

#include "tdpr/embedding.h"

#include <cmath>

#include "http_util.h"
#include "json.hpp"
#include "tdpr/error.h"
#include "tdpr/hash.h"
#include "tdpr/parallel.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

// Basis for the sign hash, distinct from the bucket hash.
constexpr uint64_t kSignBasis = Fnv1a64("tdpr.hash-embedder.sign");

double L2Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

EmbeddingVector EmbeddingVector::Normalized(std::vector<double> values) {
  const double n = L2Norm(values);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DataError("cannot normalize a zero or non-finite vector");
  }
  for (double& x : values) x /= n;
  return EmbeddingVector(std::move(values));
}

double EmbeddingVector::norm() const { return L2Norm(values_); }

double Cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw DataError("cosine of vectors with dims " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()));
  }
  double dot = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) dot += a[i] * b[i];
  return dot;
}

HashEmbedder::HashEmbedder(int dim) : dim_(dim) {
  if (dim < 8) {
    throw UsageError("hash embedder dim must be >= 8, got " +
                     std::to_string(dim));
  }
}

EmbeddingVector HashEmbedder::EmbedText(std::string_view text, int dim) {
  if (dim < 8) {
    throw UsageError("hash embedder dim must be >= 8, got " +
                     std::to_string(dim));
  }
  std::vector<double> v(dim, 0.0);
  for (const auto& term : AnalyzeTerms(text)) {
    const size_t bucket = Fnv1a64(term) % static_cast<uint64_t>(dim);
    v[bucket] += (Fnv1a64(term, kSignBasis) & 1) ? -1.0 : 1.0;
  }
  if (L2Norm(v) == 0.0) {
    v[0] = 1.0;
    return EmbeddingVector(std::move(v));
  }
  return EmbeddingVector::Normalized(std::move(v));
}

std::vector<std::vector<double>> HashEmbedder::EmbedBatch(
    const std::vector<std::string>& texts) const {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    const auto v = EmbedText(t, dim_);
    out.emplace_back(v.values().begin(), v.values().end());
  }
  return out;
}

std::string HashEmbedder::name() const {
  return "hash:" + std::to_string(dim_);
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string endpoint,
                                             int expected_dim,
                                             int timeout_seconds)
    : endpoint_(std::move(endpoint)),
      timeout_seconds_(timeout_seconds),
      dim_(expected_dim) {}

int HttpEmbeddingProvider::dim() const {
  std::lock_guard<std::mutex> lock(mu_);
  return dim_;
}

std::vector<std::vector<double>> HttpEmbeddingProvider::EmbedBatch(
    const std::vector<std::string>& texts) const {
  nlohmann::json body;
  body["texts"] = texts;
  const auto res =
      internal::PostJson(endpoint_, "/embed", body.dump(), timeout_seconds_);
  if (res.status != 200) {
    throw ProviderError("embedding endpoint returned HTTP " +
                        std::to_string(res.status) + ": " + res.body);
  }
  std::vector<std::vector<double>> vectors;
  int reply_dim = 0;
  try {
    const auto j = nlohmann::json::parse(res.body);
    reply_dim = j.at("dim").get<int>();
    vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed embedding response: ") +
                            e.what(),
                        false);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (dim_ == 0) dim_ = reply_dim;
    if (reply_dim != dim_) {
      throw ProviderError("embedding dim " + std::to_string(reply_dim) +
                              " disagrees with expected " +
                              std::to_string(dim_),
                          false);
    }
  }
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != reply_dim) {
      throw ProviderError("embedding vector length " +
                              std::to_string(v.size()) +
                              " disagrees with reported dim " +
                              std::to_string(reply_dim),
                          false);
    }
  }
  return vectors;
}

std::vector<EmbeddingVector> Embed(const EmbeddingProvider& provider,
                                   const std::vector<std::string>& texts,
                                   const EmbedOptions& options) {
  std::vector<EmbeddingVector> out(texts.size());
  if (texts.empty()) return out;
  const size_t batch = std::max<size_t>(1, options.batch_size);
  const size_t n_batches = (texts.size() + batch - 1) / batch;
  ForEachBounded(n_batches, options.max_in_flight, [&](size_t b) {
    const size_t lo = b * batch;
    const size_t hi = std::min(texts.size(), lo + batch);
    const std::vector<std::string> slice(texts.begin() + lo,
                                         texts.begin() + hi);
    std::vector<std::vector<double>> raw;
    try {
      raw = provider.EmbedBatch(slice);
    } catch (const ProviderError& e) {
      throw ProviderError(provider.name() + " failed on texts [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "): " + e.what(),
                          e.retriable());
    }
    if (raw.size() != slice.size()) {
      throw ProviderError(provider.name() + " returned " +
                              std::to_string(raw.size()) + " vectors for " +
                              std::to_string(slice.size()) + " texts",
                          false);
    }
    for (size_t i = 0; i < raw.size(); ++i) {
      if (provider.dim() > 0 &&
          static_cast<int>(raw[i].size()) != provider.dim()) {
        throw DataError(provider.name() + " returned a vector of dim " +
                        std::to_string(raw[i].size()) + ", expected " +
                        std::to_string(provider.dim()));
      }
      try {
        out[lo + i] = EmbeddingVector::Normalized(std::move(raw[i]));
      } catch (const DataError&) {
        throw ProviderError(provider.name() + " returned a zero vector for text " +
                                std::to_string(lo + i),
                            false);
      }
    }
  });
  const size_t d = out.front().dim();
  for (const auto& v : out) {
    if (v.dim() != d) {
      throw DataError(provider.name() + " returned vectors of mixed dims");
    }
  }
  return out;
}

EmbeddingVector EmbedOne(const EmbeddingProvider& provider,
                         const std::string& text) {
  return std::move(Embed(provider, {text}).front());
}

SentenceSimilarity MakeEmbeddingSimilarity(const EmbeddingProvider& provider) {
  return [&provider](std::string_view a, std::string_view b) {
    const auto v = Embed(provider, {std::string(a), std::string(b)});
    return Cosine(v[0], v[1]);
  };
}

}  // namespace tdpr
