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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tdpr/error.h"

namespace tdpr {
namespace {

EmbeddingVector RandomUnit(std::mt19937_64& rng, size_t dim) {
  std::normal_distribution<double> g;
  std::vector<double> v(dim);
  for (double& x : v) x = g(rng);
  return EmbeddingVector::Normalized(std::move(v));
}

std::vector<EmbeddingVector> RandomBatch(std::mt19937_64& rng, size_t n,
                                         size_t dim) {
  std::vector<EmbeddingVector> out;
  for (size_t i = 0; i < n; ++i) out.push_back(RandomUnit(rng, dim));
  return out;
}

// Direct transcription of the definition, no max-shift.
double NaiveLoss(const std::vector<EmbeddingVector>& a,
                 const std::vector<EmbeddingVector>& p, double s) {
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double sum = 0.0;
    for (size_t j = 0; j < p.size(); ++j) sum += std::exp(s * Cosine(a[i], p[j]));
    total += -std::log(std::exp(s * Cosine(a[i], p[i])) / sum);
  }
  return total / static_cast<double>(a.size());
}

TEST(MnrLossTest, SinglePairIsZeroWithZeroGradient) {
  std::mt19937_64 rng(1);
  const auto a = RandomBatch(rng, 1, 8);
  const auto p = RandomBatch(rng, 1, 8);
  EXPECT_EQ(MnrLoss(a, p, 20.0), 0.0);
  const auto g = MnrGradient(a, p, 20.0);
  for (double x : g.anchors[0]) EXPECT_EQ(x, 0.0);
  for (double x : g.positives[0]) EXPECT_EQ(x, 0.0);
}

TEST(MnrLossTest, EqualSimilaritiesGiveLogN) {
  // Every anchor equally similar to every positive.
  const auto e = EmbeddingVector::Normalized({1, 0, 0});
  for (size_t n : {2u, 3u, 7u}) {
    std::vector<EmbeddingVector> a(n, e), p(n, e);
    EXPECT_NEAR(MnrLoss(a, p, 20.0), std::log(static_cast<double>(n)), 1e-12);
  }
  const std::vector<EmbeddingVector> a = {EmbeddingVector::Normalized({1, 0}),
                                          EmbeddingVector::Normalized({0, 1})};
  const std::vector<EmbeddingVector> p = {EmbeddingVector::Normalized({1, 1}),
                                          EmbeddingVector::Normalized({1, 1})};
  EXPECT_NEAR(MnrLoss(a, p, 5.0), std::log(2.0), 1e-12);
}

TEST(MnrLossTest, MatchesDefinition) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const size_t n = 2 + rng() % 15;
    const size_t dim = 4 + rng() % 30;
    const auto a = RandomBatch(rng, n, dim);
    const auto p = RandomBatch(rng, n, dim);
    for (double s : {1.0, 20.0}) {
      EXPECT_NEAR(MnrLoss(a, p, s), NaiveLoss(a, p, s), 1e-10);
    }
  }
}

TEST(MnrLossTest, LargeScaleStaysFinite) {
  std::mt19937_64 rng(3);
  const auto a = RandomBatch(rng, 8, 16);
  const auto p = RandomBatch(rng, 8, 16);
  const double loss = MnrLoss(a, p, 1e4);
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_GE(loss, 0.0);
}

TEST(MnrLossTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(4);
  const double h = 1e-5;
  const double s = 20.0;
  for (int t = 0; t < 60; ++t) {
    const size_t n = 2 + rng() % 15;
    const size_t dim = 8 + rng() % 57;
    auto a = RandomBatch(rng, n, dim);
    auto p = RandomBatch(rng, n, dim);
    const auto g = MnrGradient(a, p, s);
    for (int probe = 0; probe < 24; ++probe) {
      const bool anchor = probe % 2 == 0;
      const size_t i = rng() % n;
      const size_t d = rng() % dim;
      auto& rows = anchor ? a : p;
      std::vector<double> v(rows[i].values().begin(), rows[i].values().end());
      const double orig = v[d];
      v[d] = orig + h;
      rows[i] = EmbeddingVector(v);
      const double plus = MnrLoss(a, p, s);
      v[d] = orig - h;
      rows[i] = EmbeddingVector(v);
      const double minus = MnrLoss(a, p, s);
      v[d] = orig;
      rows[i] = EmbeddingVector(v);
      const double numeric = (plus - minus) / (2 * h);
      const double analytic = anchor ? g.anchors[i][d] : g.positives[i][d];
      EXPECT_LT(std::fabs(numeric - analytic), 1e-5)
          << "n=" << n << " dim=" << dim << " i=" << i << " d=" << d;
    }
  }
}

TEST(MnrLossTest, InvariantUnderJointPermutation) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const size_t n = 2 + rng() % 10;
    auto a = RandomBatch(rng, n, 12);
    auto p = RandomBatch(rng, n, 12);
    const double before = MnrLoss(a, p, 20.0);
    for (size_t i = n; i > 1; --i) {
      const size_t j = rng() % i;
      std::swap(a[i - 1], a[j]);
      std::swap(p[i - 1], p[j]);
    }
    EXPECT_NEAR(MnrLoss(a, p, 20.0), before, 1e-12);
  }
}

TEST(MnrLossTest, SmallStepAgainstGradientLowersLoss) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const size_t n = 2 + rng() % 8;
    auto a = RandomBatch(rng, n, 16);
    auto p = RandomBatch(rng, n, 16);
    const double before = MnrLoss(a, p, 20.0);
    const auto g = MnrGradient(a, p, 20.0);
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> va(16), vp(16);
      for (size_t d = 0; d < 16; ++d) {
        va[d] = a[i][d] - 1e-4 * g.anchors[i][d];
        vp[d] = p[i][d] - 1e-4 * g.positives[i][d];
      }
      a[i] = EmbeddingVector(va);
      p[i] = EmbeddingVector(vp);
    }
    EXPECT_LT(MnrLoss(a, p, 20.0), before);
  }
}

TEST(MnrLossTest, Errors) {
  std::mt19937_64 rng(7);
  const auto a = RandomBatch(rng, 3, 8);
  const auto p = RandomBatch(rng, 2, 8);
  EXPECT_THROW(MnrLoss(a, p, 20.0), DataError);
  const auto q = RandomBatch(rng, 3, 9);
  EXPECT_THROW(MnrLoss(a, q, 20.0), DataError);
  EXPECT_THROW(MnrLoss({}, {}, 20.0), DataError);
}

}  // namespace
}  // namespace tdpr
