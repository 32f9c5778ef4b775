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

#ifndef TDPR_CORPUS_H_
#define TDPR_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tdpr {

inline constexpr int kPassageTokenLimit = 512;

enum class PassageKind { kText, kTableCaption, kTableSummary };

std::string_view PassageKindName(PassageKind kind);
// Throws DataError on an unknown name.
PassageKind ParsePassageKind(std::string_view name);

struct SectionTitle {
  std::string number;
  std::string title;
  int depth = 1;

  bool operator==(const SectionTitle&) const = default;
};

struct DocumentRecord {
  std::string doc_id;
  std::string title;
  std::string abstract;
  std::string release;
  std::vector<SectionTitle> sections;

  bool operator==(const DocumentRecord&) const = default;
};

struct Passage {
  std::string passage_id;
  std::string doc_id;
  std::vector<std::string> section_path;
  PassageKind kind = PassageKind::kText;
  std::string text;
  int token_count = 0;
  std::optional<std::string> table_id;

  bool is_table_proxy() const { return kind != PassageKind::kText; }
  bool operator==(const Passage&) const = default;
};

// Builds a passage with token_count derived from `text`.
Passage MakePassage(std::string passage_id, std::string doc_id,
                    std::vector<std::string> section_path, PassageKind kind,
                    std::string text,
                    std::optional<std::string> table_id = std::nullopt);

struct TableRecord {
  std::string table_id;
  std::string doc_id;
  std::vector<std::string> section_path;
  std::string caption;
  std::string markdown;
  std::string summary;
  int token_count = 0;  // tokens of `markdown`

  bool operator==(const TableRecord&) const = default;
};

// An immutable-after-build collection of documents, passages and tables.
// Insertion order is preserved and is the canonical serialization order.
class Corpus {
 public:
  // Each Add* throws DataError on a duplicate id.
  void AddDocument(DocumentRecord doc);
  void AddPassage(Passage passage);
  void AddTable(TableRecord table);

  // Checks every cross-record invariant: doc_id and table_id references
  // resolve, table proxies carry a table_id and text passages do not, every
  // table has a caption passage, markdown starts with '|', text passages
  // respect `token_limit` (pass 0 to skip). Throws DataError naming the id.
  void Validate(int token_limit = kPassageTokenLimit) const;

  const std::vector<DocumentRecord>& documents() const { return documents_; }
  const std::vector<Passage>& passages() const { return passages_; }
  const std::vector<TableRecord>& tables() const { return tables_; }

  const DocumentRecord* FindDocument(std::string_view doc_id) const;
  const Passage* FindPassage(std::string_view passage_id) const;
  const TableRecord* FindTable(std::string_view table_id) const;

  // Throwing variants.
  const DocumentRecord& document(std::string_view doc_id) const;
  const Passage& passage(std::string_view passage_id) const;
  const TableRecord& table(std::string_view table_id) const;

  bool operator==(const Corpus& other) const;

 private:
  std::vector<DocumentRecord> documents_;
  std::vector<Passage> passages_;
  std::vector<TableRecord> tables_;
  std::unordered_map<std::string, size_t> doc_index_;
  std::unordered_map<std::string, size_t> passage_index_;
  std::unordered_map<std::string, size_t> table_index_;
};

struct LoadOptions {
  // Text passages above this many tokens are rejected; 0 disables the check
  // (used when reading raw, not yet split, paragraphs).
  int token_limit = kPassageTokenLimit;
};

// Parses corpus JSONL. Errors carry "<path>:<line>" context.
Corpus LoadCorpus(const std::string& path, const LoadOptions& options = {});
Corpus ParseCorpus(std::istream& in, std::string_view source_name,
                   const LoadOptions& options = {});

// Writes canonical JSONL: documents, then passages, then tables.
void WriteCorpus(const Corpus& corpus, std::ostream& out);
void SaveCorpus(const Corpus& corpus, const std::string& path);

struct StatsReport {
  size_t n_documents = 0;
  size_t n_passages = 0;
  size_t n_text_passages = 0;
  size_t n_tables = 0;
  std::optional<double> tables_per_document_mean;
  std::optional<double> mean_tokens_text_passage;
  std::optional<double> mean_tokens_table;
  std::map<std::string, size_t> per_release_document_counts;
};

StatsReport ComputeCorpusStats(const Corpus& corpus);

// Human-readable multi-line rendering.
std::string FormatStats(const StatsReport& stats);

}  // namespace tdpr

#endif  // TDPR_CORPUS_H_
