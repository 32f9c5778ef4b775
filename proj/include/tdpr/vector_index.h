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

#ifndef TDPR_VECTOR_INDEX_H_
#define TDPR_VECTOR_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tdpr/adapter.h"
#include "tdpr/embedding.h"
#include "tdpr/retrieval_result.h"

namespace tdpr {

enum class IndexLevel : uint8_t { kPassage = 1, kDocument = 2 };

std::string_view IndexLevelName(IndexLevel level);

// Exact dense index. Vectors are stored at f32 precision (the on-disk
// precision) so an index and its reloaded copy score identically.
class VectorIndex {
 public:
  // adapter_tag is AdapterMatrix::Fingerprint() of the adapter applied to
  // the stored vectors, or 0 when none was.
  VectorIndex(size_t dim, IndexLevel level, uint64_t adapter_tag = 0);

  // Throws DataError on dim mismatch, a duplicate id, or a vector whose norm
  // is not 1 within 1e-6.
  void Add(std::string id, std::string doc_id, const EmbeddingVector& vector);

  size_t dim() const { return dim_; }
  IndexLevel level() const { return level_; }
  uint64_t adapter_tag() const { return adapter_tag_; }
  size_t size() const { return ids_.size(); }

  const std::string& id(size_t i) const { return ids_[i]; }
  const std::string& doc_id(size_t i) const { return doc_ids_[i]; }
  std::span<const double> vector(size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  EmbeddingVector embedding(size_t i) const;

  void Serialize(std::ostream& out) const;
  static VectorIndex Deserialize(std::istream& in,
                                 const std::string& source = "<stream>");
  void Save(const std::string& path) const;
  static VectorIndex Load(const std::string& path);

 private:
  size_t dim_;
  IndexLevel level_;
  uint64_t adapter_tag_;
  std::vector<std::string> ids_;
  std::vector<std::string> doc_ids_;
  std::vector<double> data_;
  std::unordered_set<std::string> id_set_;
};

struct IndexItem {
  std::string id;
  std::string doc_id;
  std::string text;
};

// Embeds every item's text (optionally through `adapter`) into a new index.
// Ids must be unique. Errors name the offending item.
VectorIndex BuildVectorIndex(const std::vector<IndexItem>& items,
                             const EmbeddingProvider& provider,
                             IndexLevel level,
                             const AdapterMatrix* adapter = nullptr,
                             const EmbedOptions& options = {});

// Exhaustive top-k by cosine (score desc, id asc) over entries whose doc_id
// is in `doc_filter` when given. Throws DataError on dim mismatch and
// UsageError when k < 1.
std::vector<RetrievalResult> DenseSearch(
    const VectorIndex& index, const EmbeddingVector& query, int k,
    const std::unordered_set<std::string>* doc_filter = nullptr);

}  // namespace tdpr

#endif  // TDPR_VECTOR_INDEX_H_
