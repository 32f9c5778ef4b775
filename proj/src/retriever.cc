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

#include "tdpr/retriever.h"

#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "tdpr/error.h"

namespace tdpr {

std::string PassageRepresentation(const Passage& passage) {
  std::string out;
  for (const auto& title : passage.section_path) {
    out += title;
    out += kSeparator;
  }
  out += passage.text;
  return out;
}

std::string DocumentRepresentation(const DocumentRecord& doc) {
  std::string out = doc.title;
  out += kSeparator;
  out += doc.abstract;
  for (const auto& s : doc.sections) {
    out += kSeparator;
    out += s.title;
  }
  return out;
}

std::vector<IndexItem> PassageIndexItems(const Corpus& corpus) {
  std::vector<IndexItem> items;
  items.reserve(corpus.passages().size());
  for (const auto& p : corpus.passages()) {
    items.push_back({p.passage_id, p.doc_id, PassageRepresentation(p)});
  }
  return items;
}

std::vector<IndexItem> DocumentIndexItems(const Corpus& corpus) {
  std::vector<IndexItem> items;
  items.reserve(corpus.documents().size());
  for (const auto& d : corpus.documents()) {
    items.push_back({d.doc_id, d.doc_id, DocumentRepresentation(d)});
  }
  return items;
}

VectorIndex BuildPassageIndex(const Corpus& corpus,
                              const EmbeddingProvider& provider,
                              const AdapterMatrix* adapter,
                              const EmbedOptions& options) {
  return BuildVectorIndex(PassageIndexItems(corpus), provider,
                          IndexLevel::kPassage, adapter, options);
}

VectorIndex BuildDocumentIndex(const Corpus& corpus,
                               const EmbeddingProvider& provider,
                               const AdapterMatrix* adapter,
                               const EmbedOptions& options) {
  return BuildVectorIndex(DocumentIndexItems(corpus), provider,
                          IndexLevel::kDocument, adapter, options);
}

EmbeddingVector EmbedQuery(std::string_view question,
                           const EmbeddingProvider& provider,
                           const AdapterMatrix* adapter,
                           const VectorIndex& index) {
  const uint64_t tag = adapter != nullptr ? adapter->Fingerprint() : 0;
  if (tag != index.adapter_tag()) {
    throw DataError(
        adapter == nullptr
            ? "index was built with an adapter; the same adapter is required"
            : "adapter does not match the one the index was built with");
  }
  EmbeddingVector q = EmbedOne(provider, std::string(question));
  return adapter != nullptr ? ApplyAdapter(*adapter, q) : q;
}

std::vector<RetrievalResult> DprRetrieve(std::string_view question,
                                         const VectorIndex& passage_index,
                                         const EmbeddingProvider& provider,
                                         int k, const AdapterMatrix* adapter) {
  if (k < 1) throw UsageError("k must be >= 1");
  const auto q = EmbedQuery(question, provider, adapter, passage_index);
  return DenseSearch(passage_index, q, k);
}

std::vector<RetrievalResult> DhrRetrieve(std::string_view question,
                                         const VectorIndex& doc_index,
                                         const VectorIndex& passage_index,
                                         const EmbeddingProvider& provider,
                                         int k, int d,
                                         const AdapterMatrix* adapter) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (d < 1) throw UsageError("d must be >= 1");
  if (doc_index.adapter_tag() != passage_index.adapter_tag()) {
    throw DataError("document and passage indexes use different adapters");
  }
  const auto q = EmbedQuery(question, provider, adapter, passage_index);
  std::unordered_set<std::string> docs;
  for (const auto& hit : DenseSearch(doc_index, q, d)) {
    docs.insert(hit.passage_id);
  }
  return DenseSearch(passage_index, q, k, &docs);
}

std::vector<ContextItem> ResolveTables(
    const std::vector<RetrievalResult>& results, const Corpus& corpus) {
  std::vector<ContextItem> out;
  std::unordered_set<std::string> seen_tables;
  for (const auto& r : results) {
    const Passage& p = corpus.passage(r.passage_id);
    ContextItem item;
    item.source_passage_id = p.passage_id;
    item.doc_id = p.doc_id;
    item.section_path = p.section_path;
    item.rank = r.rank;
    if (p.is_table_proxy()) {
      const auto* table = p.table_id ? corpus.FindTable(*p.table_id) : nullptr;
      if (table == nullptr) {
        throw DataError("passage '" + p.passage_id +
                        "' links to a missing table");
      }
      if (!seen_tables.insert(table->table_id).second) continue;
      item.content = table->markdown;
      item.is_table = true;
      item.table_id = table->table_id;
      item.section_path = table->section_path;
    } else {
      item.content = p.text;
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::string_view RetrieverMethodName(RetrieverMethod method) {
  switch (method) {
    case RetrieverMethod::kBm25:
      return "bm25";
    case RetrieverMethod::kDpr:
      return "dpr";
    case RetrieverMethod::kDhr:
      return "dhr";
  }
  return "dhr";
}

RetrieverMethod ParseRetrieverMethod(std::string_view name) {
  if (name == "bm25") return RetrieverMethod::kBm25;
  if (name == "dpr") return RetrieverMethod::kDpr;
  if (name == "dhr") return RetrieverMethod::kDhr;
  throw UsageError("unknown retriever method '" + std::string(name) +
                   "' (expected bm25, dpr or dhr)");
}

Retriever::Retriever(RetrieverConfig config, const InvertedIndex* sparse,
                     const VectorIndex* passage_index,
                     const VectorIndex* doc_index,
                     const EmbeddingProvider* provider,
                     const AdapterMatrix* adapter)
    : config_(config),
      sparse_(sparse),
      passage_index_(passage_index),
      doc_index_(doc_index),
      provider_(provider),
      adapter_(adapter) {
  if (config_.k < 1) throw UsageError("k must be >= 1");
  switch (config_.method) {
    case RetrieverMethod::kBm25:
      if (sparse_ == nullptr) throw UsageError("bm25 needs a sparse index");
      break;
    case RetrieverMethod::kDhr:
      if (config_.d < 1) throw UsageError("d must be >= 1");
      if (doc_index_ == nullptr) {
        throw UsageError("dhr needs a document index");
      }
      [[fallthrough]];
    case RetrieverMethod::kDpr:
      if (passage_index_ == nullptr || provider_ == nullptr) {
        throw UsageError("dense retrieval needs a passage index and provider");
      }
      break;
  }
}

std::vector<RetrievalResult> Retriever::Retrieve(
    std::string_view question) const {
  return Retrieve(question, config_.k);
}

std::vector<RetrievalResult> Retriever::Retrieve(std::string_view question,
                                                 int k) const {
  switch (config_.method) {
    case RetrieverMethod::kBm25:
      return sparse_->Search(question, k);
    case RetrieverMethod::kDpr:
      return DprRetrieve(question, *passage_index_, *provider_, k, adapter_);
    case RetrieverMethod::kDhr:
      return DhrRetrieve(question, *doc_index_, *passage_index_, *provider_, k,
                         config_.d, adapter_);
  }
  return {};
}

void WriteRunLogEntry(const RunLogEntry& entry, std::ostream& out) {
  nlohmann::ordered_json j;
  j["query_id"] = entry.query_id;
  j["method"] = entry.method;
  j["k"] = entry.k;
  if (entry.d) j["d"] = *entry.d;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : entry.results) {
    nlohmann::ordered_json rj;
    rj["passage_id"] = r.passage_id;
    rj["doc_id"] = r.doc_id;
    rj["score"] = r.score;
    rj["rank"] = r.rank;
    j["results"].push_back(std::move(rj));
  }
  out << j.dump() << '\n';
}

std::vector<RunLogEntry> ReadRunLog(std::istream& in,
                                    std::string_view source) {
  std::vector<RunLogEntry> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      RunLogEntry e;
      e.query_id = j.at("query_id").get<std::string>();
      e.method = j.at("method").get<std::string>();
      e.k = j.at("k").get<int>();
      if (j.contains("d") && !j.at("d").is_null()) e.d = j.at("d").get<int>();
      for (const auto& rj : j.at("results")) {
        e.results.push_back({rj.at("passage_id").get<std::string>(),
                             rj.at("doc_id").get<std::string>(),
                             rj.at("score").get<double>(),
                             rj.at("rank").get<int>()});
      }
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                      ": malformed run-log entry: " + e.what());
    }
  }
  return out;
}

}  // namespace tdpr
