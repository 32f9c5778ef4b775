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

#ifndef TDPR_SPARSE_INDEX_H_
#define TDPR_SPARSE_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdpr/corpus.h"
#include "tdpr/retrieval_result.h"

namespace tdpr {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// ln(1 + (N - df + 0.5) / (df + 0.5))
double Bm25Idf(double n_passages, double df);

// Okapi term weight for one query term occurrence.
double Bm25TermWeight(double idf, double tf, double length, double avg_length,
                      const Bm25Params& params);

// Okapi BM25 over passage text. Terms come from AnalyzeTerms (lowercased,
// punctuation tokens dropped); a passage's length is its term count.
class InvertedIndex {
 public:
  struct Posting {
    uint32_t ordinal;  // position in passage_ids()
    uint32_t tf;
  };

  // Throws UsageError on an empty passage list or invalid params.
  static InvertedIndex Build(const std::vector<Passage>& passages,
                             const Bm25Params& params = {});

  // Sum over query terms (duplicates included) of the Okapi term weight.
  // Throws DataError for an unknown passage id.
  double Score(const std::vector<std::string>& query_terms,
               std::string_view passage_id) const;

  // Top-k passages with a positive score, ranked (score desc, id asc).
  std::vector<RetrievalResult> SearchTerms(
      const std::vector<std::string>& query_terms, int k) const;
  std::vector<RetrievalResult> Search(std::string_view query, int k) const;

  // (passage_id, tf) pairs for `term`; empty when the term is unknown.
  std::vector<std::pair<std::string, int>> PostingList(
      std::string_view term) const;

  size_t n_passages() const { return passage_ids_.size(); }
  double avg_length() const { return avg_length_; }
  const Bm25Params& params() const { return params_; }
  const std::vector<std::string>& passage_ids() const { return passage_ids_; }
  int passage_length(std::string_view passage_id) const;
  size_t vocabulary_size() const { return postings_.size(); }

  void Serialize(std::ostream& out) const;
  static InvertedIndex Deserialize(std::istream& in,
                                   const std::string& source = "<stream>");
  void Save(const std::string& path) const;
  static InvertedIndex Load(const std::string& path);

 private:
  InvertedIndex() = default;
  void Finalize();
  size_t OrdinalOf(std::string_view passage_id) const;

  Bm25Params params_;
  std::vector<std::string> passage_ids_;
  std::vector<std::string> doc_ids_;
  std::vector<uint32_t> lengths_;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::unordered_map<std::string, size_t> ordinal_;
  double avg_length_ = 0.0;
};

}  // namespace tdpr

#endif  // TDPR_SPARSE_INDEX_H_
