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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tdpr/binary_io.h"
#include "tdpr/error.h"

namespace tdpr {
namespace {
constexpr std::string_view kMagic = "TDPR1";
constexpr uint8_t kDenseKind = 2;
constexpr double kNormTolerance = 1e-6;
}  // namespace

std::string_view IndexLevelName(IndexLevel level) {
  return level == IndexLevel::kDocument ? "document" : "passage";
}

VectorIndex::VectorIndex(size_t dim, IndexLevel level, uint64_t adapter_tag)
    : dim_(dim), level_(level), adapter_tag_(adapter_tag) {
  if (dim < 2) throw UsageError("vector index dim must be >= 2");
}

void VectorIndex::Add(std::string id, std::string doc_id,
                      const EmbeddingVector& vector) {
  if (vector.dim() != dim_) {
    throw DataError("vector for '" + id + "' has dim " +
                    std::to_string(vector.dim()) + ", index dim is " +
                    std::to_string(dim_));
  }
  if (level_ == IndexLevel::kDocument && id != doc_id) {
    throw DataError("document-level entry '" + id +
                    "' must use its doc_id as id");
  }
  double sq = 0.0;
  for (double x : vector.values()) {
    const double r = static_cast<float>(x);
    sq += r * r;
  }
  if (std::abs(std::sqrt(sq) - 1.0) > kNormTolerance) {
    throw DataError("vector for '" + id + "' is not unit-norm");
  }
  if (!id_set_.insert(id).second) {
    throw DataError("duplicate id '" + id + "' in vector index");
  }
  for (double x : vector.values()) {
    data_.push_back(static_cast<double>(static_cast<float>(x)));
  }
  ids_.push_back(std::move(id));
  doc_ids_.push_back(std::move(doc_id));
}

EmbeddingVector VectorIndex::embedding(size_t i) const {
  const auto v = vector(i);
  return EmbeddingVector(std::vector<double>(v.begin(), v.end()));
}

void VectorIndex::Serialize(std::ostream& out) const {
  BinaryWriter w(out);
  w.Bytes(kMagic);
  w.U8(kDenseKind);
  w.U8(static_cast<uint8_t>(level_));
  w.U32(static_cast<uint32_t>(dim_));
  w.U64(adapter_tag_);
  w.U32(static_cast<uint32_t>(ids_.size()));
  for (size_t i = 0; i < ids_.size(); ++i) {
    w.Str(ids_[i]);
    w.Str(doc_ids_[i]);
    for (double x : vector(i)) w.F32(static_cast<float>(x));
  }
}

VectorIndex VectorIndex::Deserialize(std::istream& in,
                                     const std::string& source) {
  BinaryReader r(in, source);
  r.ExpectMagic(kMagic);
  if (r.U8() != kDenseKind) throw DataError(source + ": not a dense index");
  const uint8_t level = r.U8();
  if (level != 1 && level != 2) throw DataError(source + ": bad level");
  const uint32_t dim = r.U32();
  const uint64_t tag = r.U64();
  const uint32_t n = r.U32();
  VectorIndex index(dim, static_cast<IndexLevel>(level), tag);
  for (uint32_t i = 0; i < n; ++i) {
    std::string id = r.Str();
    std::string doc_id = r.Str();
    std::vector<double> v(dim);
    for (double& x : v) x = r.F32();
    index.Add(std::move(id), std::move(doc_id), EmbeddingVector(std::move(v)));
  }
  r.ExpectEnd();
  return index;
}

void VectorIndex::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  Serialize(out);
}

VectorIndex VectorIndex::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return Deserialize(in, path);
}

VectorIndex BuildVectorIndex(const std::vector<IndexItem>& items,
                             const EmbeddingProvider& provider,
                             IndexLevel level, const AdapterMatrix* adapter,
                             const EmbedOptions& options) {
  std::vector<std::string> texts;
  texts.reserve(items.size());
  for (const auto& item : items) texts.push_back(item.text);
  const auto vectors = Embed(provider, texts, options);

  size_t dim = adapter != nullptr ? adapter->rows()
                                  : static_cast<size_t>(provider.dim());
  if (dim == 0 && !vectors.empty()) dim = vectors.front().dim();
  if (dim == 0) dim = 2;  // empty index from a provider of unknown dim
  VectorIndex index(dim, level, adapter != nullptr ? adapter->Fingerprint() : 0);
  for (size_t i = 0; i < items.size(); ++i) {
    try {
      const EmbeddingVector v =
          adapter != nullptr ? ApplyAdapter(*adapter, vectors[i]) : vectors[i];
      index.Add(items[i].id, items[i].doc_id, v);
    } catch (const DataError& e) {
      throw DataError("item '" + items[i].id + "': " + e.what());
    }
  }
  return index;
}

std::vector<RetrievalResult> DenseSearch(
    const VectorIndex& index, const EmbeddingVector& query, int k,
    const std::unordered_set<std::string>* doc_filter) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (query.dim() != index.dim()) {
    throw DataError("query dim " + std::to_string(query.dim()) +
                    " does not match index dim " +
                    std::to_string(index.dim()));
  }
  const auto q = query.values();
  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(index.size());
  for (size_t i = 0; i < index.size(); ++i) {
    if (doc_filter != nullptr && !doc_filter->contains(index.doc_id(i))) {
      continue;
    }
    const auto v = index.vector(i);
    double dot = 0.0;
    for (size_t d = 0; d < v.size(); ++d) dot += v[d] * q[d];
    scored.emplace_back(dot, i);
  }
  const size_t n = std::min(scored.size(), static_cast<size_t>(k));
  std::partial_sort(scored.begin(), scored.begin() + n, scored.end(),
                    [&](const auto& a, const auto& b) {
                      return RanksBefore(a.first, index.id(a.second), b.first,
                                         index.id(b.second));
                    });
  std::vector<RetrievalResult> out;
  out.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    const size_t i = scored[r].second;
    out.push_back({index.id(i), index.doc_id(i), scored[r].first,
                   static_cast<int>(r + 1)});
  }
  return out;
}

}  // namespace tdpr
