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

#include "tdpr/sparse_index.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "tdpr/binary_io.h"
#include "tdpr/error.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

constexpr std::string_view kMagic = "TDPR1";
constexpr uint8_t kSparseKind = 1;

std::vector<RetrievalResult> TopK(const std::vector<double>& scores,
                                  const std::vector<std::string>& ids,
                                  const std::vector<std::string>& doc_ids,
                                  int k) {
  std::vector<size_t> hits;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) hits.push_back(i);
  }
  const size_t n = std::min(hits.size(), static_cast<size_t>(k));
  std::partial_sort(hits.begin(), hits.begin() + n, hits.end(),
                    [&](size_t a, size_t b) {
                      return RanksBefore(scores[a], ids[a], scores[b], ids[b]);
                    });
  std::vector<RetrievalResult> out;
  out.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    const size_t i = hits[r];
    out.push_back({ids[i], doc_ids[i], scores[i], static_cast<int>(r + 1)});
  }
  return out;
}

}  // namespace

double Bm25Idf(double n_passages, double df) {
  return std::log(1.0 + (n_passages - df + 0.5) / (df + 0.5));
}

double Bm25TermWeight(double idf, double tf, double length, double avg_length,
                      const Bm25Params& params) {
  const double norm =
      params.k1 * (1.0 - params.b + params.b * length / avg_length);
  return idf * tf * (params.k1 + 1.0) / (tf + norm);
}

InvertedIndex InvertedIndex::Build(const std::vector<Passage>& passages,
                                   const Bm25Params& params) {
  if (passages.empty()) {
    throw UsageError("cannot build a sparse index over zero passages");
  }
  if (!(params.k1 > 0.0) || params.b < 0.0 || params.b > 1.0) {
    throw UsageError("BM25 requires k1 > 0 and 0 <= b <= 1");
  }
  InvertedIndex index;
  index.params_ = params;
  for (const Passage& p : passages) {
    const auto ordinal = static_cast<uint32_t>(index.passage_ids_.size());
    index.passage_ids_.push_back(p.passage_id);
    index.doc_ids_.push_back(p.doc_id);
    const auto terms = AnalyzeTerms(p.text);
    index.lengths_.push_back(static_cast<uint32_t>(terms.size()));
    std::map<std::string, uint32_t> tf;
    for (const auto& t : terms) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings_[term].push_back({ordinal, count});
    }
  }
  index.Finalize();
  return index;
}

void InvertedIndex::Finalize() {
  ordinal_.clear();
  for (size_t i = 0; i < passage_ids_.size(); ++i) {
    if (!ordinal_.emplace(passage_ids_[i], i).second) {
      throw DataError("duplicate passage_id '" + passage_ids_[i] +
                      "' in sparse index");
    }
  }
  const double total =
      std::accumulate(lengths_.begin(), lengths_.end(), 0.0);
  avg_length_ =
      passage_ids_.empty() ? 0.0 : total / static_cast<double>(lengths_.size());
}

size_t InvertedIndex::OrdinalOf(std::string_view passage_id) const {
  auto it = ordinal_.find(std::string(passage_id));
  if (it == ordinal_.end()) {
    throw DataError("passage '" + std::string(passage_id) +
                    "' is not in the sparse index");
  }
  return it->second;
}

int InvertedIndex::passage_length(std::string_view passage_id) const {
  return static_cast<int>(lengths_[OrdinalOf(passage_id)]);
}

double InvertedIndex::Score(const std::vector<std::string>& query_terms,
                            std::string_view passage_id) const {
  const size_t ordinal = OrdinalOf(passage_id);
  const double n = static_cast<double>(passage_ids_.size());
  double score = 0.0;
  for (const auto& term : query_terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const auto& list = it->second;
    auto pos = std::lower_bound(
        list.begin(), list.end(), ordinal,
        [](const Posting& p, size_t o) { return p.ordinal < o; });
    if (pos == list.end() || pos->ordinal != ordinal) continue;
    const double idf = Bm25Idf(n, static_cast<double>(list.size()));
    score += Bm25TermWeight(idf, pos->tf, lengths_[ordinal], avg_length_,
                            params_);
  }
  return score;
}

std::vector<RetrievalResult> InvertedIndex::SearchTerms(
    const std::vector<std::string>& query_terms, int k) const {
  if (k < 1) throw UsageError("k must be >= 1");
  const double n = static_cast<double>(passage_ids_.size());
  std::vector<double> scores(passage_ids_.size(), 0.0);
  for (const auto& term : query_terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double idf = Bm25Idf(n, static_cast<double>(it->second.size()));
    for (const Posting& p : it->second) {
      scores[p.ordinal] += Bm25TermWeight(idf, p.tf, lengths_[p.ordinal],
                                          avg_length_, params_);
    }
  }
  return TopK(scores, passage_ids_, doc_ids_, k);
}

std::vector<RetrievalResult> InvertedIndex::Search(std::string_view query,
                                                   int k) const {
  return SearchTerms(AnalyzeTerms(query), k);
}

std::vector<std::pair<std::string, int>> InvertedIndex::PostingList(
    std::string_view term) const {
  std::vector<std::pair<std::string, int>> out;
  auto it = postings_.find(term);
  if (it == postings_.end()) return out;
  for (const Posting& p : it->second) {
    out.emplace_back(passage_ids_[p.ordinal], static_cast<int>(p.tf));
  }
  return out;
}

void InvertedIndex::Serialize(std::ostream& out) const {
  BinaryWriter w(out);
  w.Bytes(kMagic);
  w.U8(kSparseKind);
  w.F64(params_.k1);
  w.F64(params_.b);
  w.U32(static_cast<uint32_t>(passage_ids_.size()));
  for (size_t i = 0; i < passage_ids_.size(); ++i) {
    w.Str(passage_ids_[i]);
    w.Str(doc_ids_[i]);
    w.U32(lengths_[i]);
  }
  w.U32(static_cast<uint32_t>(postings_.size()));
  for (const auto& [term, list] : postings_) {
    w.Str(term);
    w.U32(static_cast<uint32_t>(list.size()));
    for (const Posting& p : list) {
      w.U32(p.ordinal);
      w.U32(p.tf);
    }
  }
}

InvertedIndex InvertedIndex::Deserialize(std::istream& in,
                                         const std::string& source) {
  BinaryReader r(in, source);
  r.ExpectMagic(kMagic);
  if (r.U8() != kSparseKind) throw DataError(source + ": not a sparse index");
  InvertedIndex index;
  index.params_.k1 = r.F64();
  index.params_.b = r.F64();
  const uint32_t n = r.U32();
  for (uint32_t i = 0; i < n; ++i) {
    index.passage_ids_.push_back(r.Str());
    index.doc_ids_.push_back(r.Str());
    index.lengths_.push_back(r.U32());
  }
  const uint32_t n_terms = r.U32();
  for (uint32_t t = 0; t < n_terms; ++t) {
    std::string term = r.Str();
    const uint32_t len = r.U32();
    std::vector<Posting> list(len);
    for (auto& p : list) {
      p.ordinal = r.U32();
      p.tf = r.U32();
      if (p.ordinal >= n) throw DataError(source + ": posting out of range");
    }
    index.postings_.emplace(std::move(term), std::move(list));
  }
  r.ExpectEnd();
  index.Finalize();
  return index;
}

void InvertedIndex::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  Serialize(out);
}

InvertedIndex InvertedIndex::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return Deserialize(in, path);
}

}  // namespace tdpr
