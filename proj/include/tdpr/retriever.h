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

#ifndef TDPR_RETRIEVER_H_
#define TDPR_RETRIEVER_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdpr/adapter.h"
#include "tdpr/corpus.h"
#include "tdpr/embedding.h"
#include "tdpr/retrieval_result.h"
#include "tdpr/sparse_index.h"
#include "tdpr/vector_index.h"

namespace tdpr {

// Reserved separator token between representation fields.
inline constexpr std::string_view kSeparator = " [SEP] ";

// section titles root->leaf, then the passage text. Table proxies use their
// caption/summary text; the table payload is never part of it.
std::string PassageRepresentation(const Passage& passage);

// title, abstract, then every section title in document order.
std::string DocumentRepresentation(const DocumentRecord& doc);

std::vector<IndexItem> PassageIndexItems(const Corpus& corpus);
std::vector<IndexItem> DocumentIndexItems(const Corpus& corpus);

VectorIndex BuildPassageIndex(const Corpus& corpus,
                              const EmbeddingProvider& provider,
                              const AdapterMatrix* adapter = nullptr,
                              const EmbedOptions& options = {});
VectorIndex BuildDocumentIndex(const Corpus& corpus,
                               const EmbeddingProvider& provider,
                               const AdapterMatrix* adapter = nullptr,
                               const EmbedOptions& options = {});

// Embeds the question and applies `adapter` if given. The adapter must be
// the one `index` was built with (checked by fingerprint).
EmbeddingVector EmbedQuery(std::string_view question,
                           const EmbeddingProvider& provider,
                           const AdapterMatrix* adapter,
                           const VectorIndex& index);

std::vector<RetrievalResult> DprRetrieve(std::string_view question,
                                         const VectorIndex& passage_index,
                                         const EmbeddingProvider& provider,
                                         int k,
                                         const AdapterMatrix* adapter = nullptr);

// Two stages: the top-d documents by cosine against the document index, then
// dense search over passages of those documents only. Final scores are the
// passage cosines; document scores only restrict the search space.
std::vector<RetrievalResult> DhrRetrieve(std::string_view question,
                                         const VectorIndex& doc_index,
                                         const VectorIndex& passage_index,
                                         const EmbeddingProvider& provider,
                                         int k, int d,
                                         const AdapterMatrix* adapter = nullptr);

struct ContextItem {
  std::string source_passage_id;
  std::string doc_id;
  std::vector<std::string> section_path;
  std::string content;
  bool is_table = false;
  std::optional<std::string> table_id;
  int rank = 0;
};

// Maps hits to context: text passages carry their text, caption/summary
// hits carry the linked table's Markdown. Only the best-ranked hit of each
// table survives.
std::vector<ContextItem> ResolveTables(
    const std::vector<RetrievalResult>& results, const Corpus& corpus);

enum class RetrieverMethod { kBm25, kDpr, kDhr };

std::string_view RetrieverMethodName(RetrieverMethod method);
// Throws UsageError on an unknown name.
RetrieverMethod ParseRetrieverMethod(std::string_view name);

struct RetrieverConfig {
  RetrieverMethod method = RetrieverMethod::kDhr;
  int k = 10;
  int d = 5;
};

// A retriever method bound to its indexes. Pointers are borrowed and must
// outlive the retriever; the ones the method does not use may be null.
class Retriever {
 public:
  Retriever(RetrieverConfig config, const InvertedIndex* sparse,
            const VectorIndex* passage_index, const VectorIndex* doc_index,
            const EmbeddingProvider* provider,
            const AdapterMatrix* adapter = nullptr);

  std::vector<RetrievalResult> Retrieve(std::string_view question) const;
  std::vector<RetrievalResult> Retrieve(std::string_view question,
                                        int k) const;
  const RetrieverConfig& config() const { return config_; }

 private:
  RetrieverConfig config_;
  const InvertedIndex* sparse_;
  const VectorIndex* passage_index_;
  const VectorIndex* doc_index_;
  const EmbeddingProvider* provider_;
  const AdapterMatrix* adapter_;
};

struct RunLogEntry {
  std::string query_id;
  std::string method;
  int k = 0;
  std::optional<int> d;
  std::vector<RetrievalResult> results;
};

// One JSON object per line.
void WriteRunLogEntry(const RunLogEntry& entry, std::ostream& out);
std::vector<RunLogEntry> ReadRunLog(std::istream& in,
                                    std::string_view source = "<run-log>");

}  // namespace tdpr

#endif  // TDPR_RETRIEVER_H_
