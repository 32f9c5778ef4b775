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

#include "tdpr/vector_index.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "support/test_util.h"
#include "tdpr/error.h"

namespace tdpr {
namespace {

EmbeddingVector RandomUnit(std::mt19937_64& rng, size_t dim) {
  std::normal_distribution<double> g;
  std::vector<double> v(dim);
  for (double& x : v) x = g(rng);
  return EmbeddingVector::Normalized(std::move(v));
}

std::string Id(size_t i) {
  std::string s = std::to_string(i);
  return "p" + std::string(5 - s.size(), '0') + s;
}

struct Fixture {
  VectorIndex index{64, IndexLevel::kPassage};
  std::vector<std::vector<float>> stored;
};

Fixture MakeFixture(std::mt19937_64& rng, size_t n, size_t dim) {
  Fixture f{VectorIndex(dim, IndexLevel::kPassage), {}};
  for (size_t i = 0; i < n; ++i) {
    const auto v = RandomUnit(rng, dim);
    f.index.Add(Id(i), "D" + std::to_string(i % 10), v);
    f.stored.emplace_back(v.values().begin(), v.values().end());
  }
  return f;
}

TEST(DenseSearchTest, MatchesBruteForce) {
  std::mt19937_64 rng(42);
  const Fixture f = MakeFixture(rng, 1000, 64);
  for (int q = 0; q < 200; ++q) {
    const auto query = RandomUnit(rng, 64);
    std::vector<std::pair<double, size_t>> all;
    for (size_t i = 0; i < f.stored.size(); ++i) {
      double dot = 0.0;
      for (size_t d = 0; d < 64; ++d) {
        dot += static_cast<double>(f.stored[i][d]) * query[d];
      }
      all.emplace_back(dot, i);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    const auto got = DenseSearch(f.index, query, 10);
    ASSERT_EQ(got.size(), 10u);
    for (size_t r = 0; r < 10; ++r) {
      EXPECT_EQ(got[r].passage_id, Id(all[r].second));
      EXPECT_NEAR(got[r].score, all[r].first, 1e-12);
      EXPECT_EQ(got[r].rank, static_cast<int>(r + 1));
    }
  }
}

TEST(DenseSearchTest, StoredVectorRanksFirst) {
  std::mt19937_64 rng(7);
  const Fixture f = MakeFixture(rng, 100, 32);
  for (size_t i = 0; i < 100; i += 13) {
    const auto got = DenseSearch(f.index, f.index.embedding(i), 1);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].passage_id, Id(i));
    EXPECT_NEAR(got[0].score, 1.0, 1e-6);
  }
}

TEST(DenseSearchTest, FilterRestrictsToSubset) {
  std::mt19937_64 rng(3);
  const Fixture f = MakeFixture(rng, 200, 16);
  const std::unordered_set<std::string> none;
  EXPECT_TRUE(DenseSearch(f.index, RandomUnit(rng, 16), 5, &none).empty());

  for (int trial = 0; trial < 50; ++trial) {
    std::unordered_set<std::string> docs;
    for (int d = 0; d < 10; ++d) {
      if (rng() % 2) docs.insert("D" + std::to_string(d));
    }
    const auto query = RandomUnit(rng, 16);
    const auto filtered = DenseSearch(f.index, query, 7, &docs);
    const auto full = DenseSearch(f.index, query, 200);
    std::vector<RetrievalResult> want;
    for (const auto& r : full) {
      if (docs.contains(r.doc_id) && want.size() < 7) want.push_back(r);
    }
    ASSERT_EQ(filtered.size(), want.size());
    for (size_t r = 0; r < want.size(); ++r) {
      EXPECT_EQ(filtered[r].passage_id, want[r].passage_id);
      EXPECT_EQ(filtered[r].score, want[r].score);
    }
  }
}

TEST(DenseSearchTest, Errors) {
  VectorIndex index(4, IndexLevel::kPassage);
  index.Add("a", "D", EmbeddingVector::Normalized({1, 0, 0, 0}));
  EXPECT_THROW(DenseSearch(index, EmbeddingVector::Normalized({1, 0}), 1),
               DataError);
  EXPECT_THROW(
      DenseSearch(index, EmbeddingVector::Normalized({1, 0, 0, 0}), 0),
      UsageError);
}

TEST(DenseSearchTest, TiesByAscendingId) {
  VectorIndex index(2, IndexLevel::kPassage);
  index.Add("b", "D", EmbeddingVector::Normalized({1, 0}));
  index.Add("a", "D", EmbeddingVector::Normalized({1, 0}));
  index.Add("c", "D", EmbeddingVector::Normalized({0, 1}));
  const auto got = DenseSearch(index, EmbeddingVector::Normalized({1, 0}), 3);
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0].passage_id, "a");
  EXPECT_EQ(got[1].passage_id, "b");
  EXPECT_EQ(got[2].passage_id, "c");
}

TEST(VectorIndexTest, AddValidation) {
  VectorIndex index(2, IndexLevel::kPassage);
  index.Add("a", "D", EmbeddingVector::Normalized({1, 1}));
  EXPECT_THROW(index.Add("a", "D", EmbeddingVector::Normalized({1, 0})),
               DataError);
  EXPECT_THROW(index.Add("b", "D", EmbeddingVector({1.0, 1.0})), DataError);
  EXPECT_THROW(index.Add("c", "D", EmbeddingVector::Normalized({1, 0, 0})),
               DataError);
  VectorIndex docs(2, IndexLevel::kDocument);
  EXPECT_THROW(docs.Add("x", "D", EmbeddingVector::Normalized({1, 0})),
               DataError);
  EXPECT_THROW(VectorIndex(1, IndexLevel::kPassage), UsageError);
}

TEST(VectorIndexTest, SaveLoadRoundTripIsByteExact) {
  std::mt19937_64 rng(11);
  Fixture f = MakeFixture(rng, 50, 8);
  VectorIndex tagged(8, IndexLevel::kDocument, 0x1234abcdULL);
  tagged.Add("D1", "D1", RandomUnit(rng, 8));
  for (const VectorIndex* index : {&f.index, &tagged}) {
    testing::TempDir dir;
    index->Save(dir.file("v.idx"));
    const auto loaded = VectorIndex::Load(dir.file("v.idx"));
    EXPECT_EQ(loaded.size(), index->size());
    EXPECT_EQ(loaded.level(), index->level());
    EXPECT_EQ(loaded.adapter_tag(), index->adapter_tag());
    for (size_t i = 0; i < loaded.size(); ++i) {
      EXPECT_EQ(loaded.id(i), index->id(i));
      EXPECT_EQ(loaded.doc_id(i), index->doc_id(i));
      EXPECT_EQ(loaded.embedding(i), index->embedding(i));
    }
    loaded.Save(dir.file("w.idx"));
    EXPECT_EQ(testing::ReadFile(dir.file("v.idx")),
              testing::ReadFile(dir.file("w.idx")));
  }
}

TEST(VectorIndexTest, CorruptFilesRejected) {
  std::mt19937_64 rng(5);
  const Fixture f = MakeFixture(rng, 3, 4);
  std::ostringstream os;
  f.index.Serialize(os);
  const std::string bytes = os.str();
  for (size_t cut : {size_t{0}, size_t{3}, bytes.size() / 2, bytes.size() - 1}) {
    std::istringstream is(bytes.substr(0, cut));
    EXPECT_THROW(VectorIndex::Deserialize(is), DataError) << cut;
  }
  std::istringstream trailing(bytes + "x");
  EXPECT_THROW(VectorIndex::Deserialize(trailing), DataError);
  std::string bad = bytes;
  bad[0] = 'X';
  std::istringstream magic(bad);
  EXPECT_THROW(VectorIndex::Deserialize(magic), DataError);
  EXPECT_THROW(VectorIndex::Load("/nonexistent/x.idx"), DataError);
}

TEST(BuildVectorIndexTest, EmbedsAndAppliesAdapter) {
  HashEmbedder p(16);
  const std::vector<IndexItem> items = {{"a", "D1", "gnb ssb"},
                                        {"b", "D1", "ue pbch"},
                                        {"c", "D2", "amf upf"}};
  const auto plain = BuildVectorIndex(items, p, IndexLevel::kPassage);
  EXPECT_EQ(plain.size(), 3u);
  EXPECT_EQ(plain.adapter_tag(), 0u);
  for (size_t i = 0; i < 3; ++i) {
    const auto want = HashEmbedder::EmbedText(items[i].text, 16);
    for (size_t d = 0; d < 16; ++d) {
      EXPECT_NEAR(plain.vector(i)[d], want[d], 1e-7);
    }
  }
  AdapterMatrix w = AdapterMatrix::Identity(16);
  w.at(0, 1) = 0.5;
  const auto adapted = BuildVectorIndex(items, p, IndexLevel::kPassage, &w);
  EXPECT_EQ(adapted.adapter_tag(), w.Fingerprint());
  EXPECT_THROW(BuildVectorIndex({items[0], items[0]}, p, IndexLevel::kPassage),
               DataError);
}

}  // namespace
}  // namespace tdpr
