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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support/test_util.h"
#include "tdpr/error.h"
#include "tdpr/mnr_loss.h"
#include "tdpr/retriever.h"

namespace tdpr {
namespace {

// Questions live in the first half of the space; each positive is its
// question plus strong noise in the second half, which an adapter can learn
// to suppress.
struct Fixture {
  std::vector<EmbeddingVector> questions;
  std::vector<EmbeddingVector> positives;
};

Fixture MakeFixture(size_t n, size_t dim, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Fixture f;
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> q(dim, 0.0), p(dim, 0.0);
    for (size_t d = 0; d < dim / 2; ++d) q[d] = g(rng);
    const double qn = std::sqrt(std::inner_product(q.begin(), q.end(),
                                                   q.begin(), 0.0));
    for (size_t d = 0; d < dim; ++d) {
      p[d] = d < dim / 2 ? q[d] / qn : 1.5 * g(rng) / std::sqrt(dim / 2.0);
    }
    f.questions.push_back(EmbeddingVector::Normalized(q));
    f.positives.push_back(EmbeddingVector::Normalized(p));
  }
  return f;
}

double AdaptedLoss(const AdapterMatrix& w, const Fixture& f, double scale) {
  std::vector<EmbeddingVector> a, p;
  for (const auto& q : f.questions) a.push_back(ApplyAdapter(w, q));
  for (const auto& x : f.positives) p.push_back(ApplyAdapter(w, x));
  return MnrLoss(a, p, scale);
}

TEST(TrainerTest, ZeroLearningRateKeepsAdapterAndLoss) {
  const Fixture f = MakeFixture(12, 8, 1);
  TrainConfig c;
  c.learning_rate = 0.0;
  c.batch_size = 12;
  c.epochs = 5;
  const auto r = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  c.epochs = 1;
  const auto r1 = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  EXPECT_EQ(r.adapter, r1.adapter);
  ASSERT_EQ(r.loss_history.size(), 5u);
  for (double l : r.loss_history) {
    EXPECT_NEAR(l, r.loss_history[0], 1e-12);
  }
  // Initial weights are the identity plus noise bounded by 0.01.
  for (size_t i = 0; i < 8; ++i) {
    for (size_t j = 0; j < 8; ++j) {
      EXPECT_LE(std::fabs(r.adapter.at(i, j) - (i == j ? 1.0 : 0.0)), 0.01);
    }
  }
}

TEST(TrainerTest, SameSeedIsBitwiseReproducible) {
  const Fixture f = MakeFixture(40, 16, 2);
  TrainConfig c;
  c.batch_size = 8;
  c.epochs = 3;
  const auto a = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  const auto b = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  EXPECT_EQ(a.adapter, b.adapter);
  EXPECT_EQ(a.loss_history, b.loss_history);
  c.seed = 43;
  const auto other = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  EXPECT_NE(a.adapter, other.adapter);
}

TEST(TrainerTest, LossDecreasesOnLearnableData) {
  const Fixture f = MakeFixture(64, 16, 3);
  TrainConfig c;
  c.batch_size = 16;
  c.epochs = 15;
  c.learning_rate = 0.5;
  const auto r = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  ASSERT_EQ(r.loss_history.size(), 15u);
  EXPECT_LT(r.loss_history.back(), 0.5 * r.loss_history.front());
  for (double l : r.loss_history) EXPECT_TRUE(std::isfinite(l));
}

TEST(TrainerTest, SingleStepFollowsNumericGradient) {
  // One full batch and one epoch: W1 = W0 - lr * dL/dW at W0.
  const Fixture f = MakeFixture(6, 6, 4);
  TrainConfig c;
  c.batch_size = 6;
  c.epochs = 1;
  c.scale = 5.0;
  c.learning_rate = 0.0;
  const auto w0 = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  c.learning_rate = 1e-3;
  const auto w1 = TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  EXPECT_NEAR(w0.loss_history[0], AdaptedLoss(w0.adapter, f, c.scale), 1e-12);
  const double h = 1e-6;
  for (size_t r = 0; r < 6; ++r) {
    for (size_t col = 0; col < 6; ++col) {
      AdapterMatrix plus = w0.adapter, minus = w0.adapter;
      plus.at(r, col) += h;
      minus.at(r, col) -= h;
      const double numeric =
          (AdaptedLoss(plus, f, c.scale) - AdaptedLoss(minus, f, c.scale)) /
          (2 * h);
      const double step = (w0.adapter.at(r, col) - w1.adapter.at(r, col)) /
                          c.learning_rate;
      EXPECT_NEAR(step, numeric, 1e-6) << r << "," << col;
    }
  }
}

TEST(TrainerTest, ConfigValidation) {
  const Fixture f = MakeFixture(8, 8, 5);
  auto run = [&](TrainConfig c) {
    return TrainAdapterOnEmbeddings(f.questions, f.positives, c);
  };
  TrainConfig c;
  c.batch_size = 1;
  EXPECT_THROW(run(c), UsageError);
  c = {};
  c.batch_size = 4;
  c.epochs = 0;
  EXPECT_THROW(run(c), UsageError);
  c.epochs = 1;
  c.learning_rate = -0.1;
  EXPECT_THROW(run(c), UsageError);
  c.learning_rate = 0.1;
  c.scale = 0.0;
  EXPECT_THROW(run(c), UsageError);
  c.scale = 20.0;
  c.batch_size = 9;
  EXPECT_THROW(run(c), UsageError);
  std::vector<EmbeddingVector> fewer(f.positives.begin(),
                                     f.positives.end() - 1);
  c.batch_size = 4;
  EXPECT_THROW(TrainAdapterOnEmbeddings(f.questions, fewer, c), DataError);
}

TEST(TrainerTest, NonFiniteLossIsNumericError) {
  Fixture f = MakeFixture(16, 8, 6);
  std::vector<double> bad(8, 0.0);
  bad[0] = NAN;
  f.positives[3] = EmbeddingVector(bad);
  TrainConfig c;
  c.batch_size = 16;
  EXPECT_THROW(TrainAdapterOnEmbeddings(f.questions, f.positives, c),
               NumericError);
  const Fixture g = MakeFixture(16, 8, 6);
  c.learning_rate = INFINITY;
  EXPECT_THROW(TrainAdapterOnEmbeddings(g.questions, g.positives, c),
               UsageError);
}

TEST(TrainerTest, CorpusPairsUsePassageRepresentations) {
  const Corpus corpus = testing::ParseCorpusText(testing::kTinyCorpus);
  const std::vector<TrainingPair> pairs = {
      {"q1", "how long is a radio frame", "D1#p1"},
      {"q2", "what does the source gnb send", "D2#p1"},
      {"q3", "what bounds the peak rate", "D3#p1"},
      {"q4", "how many slots per subframe", "D1#p2"},
      {"q5", "how long is a frame again", "D1#p1"}};
  HashEmbedder p(32);
  TrainConfig c;
  c.batch_size = 2;
  c.epochs = 2;
  const auto r = TrainAdapter(pairs, corpus, p, c);
  std::vector<EmbeddingVector> q, pos;
  for (const auto& pair : pairs) {
    q.push_back(EmbedOne(p, pair.question_text));
    pos.push_back(
        EmbedOne(p, PassageRepresentation(corpus.passage(pair.positive_passage_id))));
  }
  EXPECT_EQ(r.adapter, TrainAdapterOnEmbeddings(q, pos, c).adapter);

  auto bad = pairs;
  bad[0].positive_passage_id = "nope";
  EXPECT_THROW(TrainAdapter(bad, corpus, p, c), DataError);
}

}  // namespace
}  // namespace tdpr
